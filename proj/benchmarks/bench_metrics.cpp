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
#include "slimslide/metrics.hpp"

namespace slimslide::bench {
namespace {

void BM_Ssim(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RgbImage a = texture(n, n, 1);
  const RgbImage b = texture(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ssim(a, b));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Ssim)->Arg(256)->Arg(512);

void BM_Psnr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RgbImage a = texture(n, n, 1);
  const RgbImage b = texture(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(psnr(a, b));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Psnr)->Arg(256)->Arg(512);

}  // namespace
}  // namespace slimslide::bench
