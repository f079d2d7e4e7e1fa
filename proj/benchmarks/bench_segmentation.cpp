// Copyright 2026 The slimslide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bench_fixtures.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide::bench {
namespace {

void BM_ThresholdSegment(benchmark::State& state) {
  const RgbImage img = texture(1024, 1024, 3);
  for (auto _ : state) benchmark::DoNotOptimize(threshold_segment(img, SegmentationConfig{}));
  state.SetItemsProcessed(state.iterations() * 1024 * 1024);
}
BENCHMARK(BM_ThresholdSegment);

void BM_MorphologicalClose(benchmark::State& state) {
  const BinaryMask m = texture_mask(512, 512, 4);
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(morphological_close(m, radius));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_MorphologicalClose)->Arg(1)->Arg(5)->Arg(9)->Arg(20);

}  // namespace
}  // namespace slimslide::bench
