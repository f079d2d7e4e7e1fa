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
#include "slimslide/codecs.hpp"

namespace slimslide::bench {
namespace {

CodecSpec spec_for(std::int64_t index) {
  switch (index) {
    case 0: return CodecSpec::jpeg(90);
    case 1: return CodecSpec::png();
    default: return CodecSpec::mock_learned(6);
  }
}

void BM_Encode(benchmark::State& state) {
  const CodecSpec spec = spec_for(state.range(0));
  const RgbImage img = texture(512, 512, 5);
  state.SetLabel(spec.label());
  for (auto _ : state) benchmark::DoNotOptimize(encode(img, spec));
  state.SetBytesProcessed(state.iterations() * 512 * 512 * 3);
}
BENCHMARK(BM_Encode)->DenseRange(0, 2);

void BM_Decode(benchmark::State& state) {
  const CodecSpec spec = spec_for(state.range(0));
  const EncodedPatch e = encode(texture(512, 512, 5), spec);
  state.SetLabel(spec.label());
  for (auto _ : state) benchmark::DoNotOptimize(decode(e, spec));
  state.SetBytesProcessed(state.iterations() * 512 * 512 * 3);
}
BENCHMARK(BM_Decode)->DenseRange(0, 2);

}  // namespace
}  // namespace slimslide::bench
