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

#include <filesystem>

#include "slimslide/pyramid.hpp"
#include "slimslide/synth.hpp"

namespace slimslide::bench {
namespace {

TiledPyramid fixture() {
  SynthSpec spec;
  spec.seed = 6;
  spec.width = 2048;
  spec.height = 2048;
  spec.n_levels = 3;
  return generate_slide(spec).pyramid;
}

std::filesystem::path scratch(const char* name) { return std::filesystem::temp_directory_path() / name; }

void BM_WritePyramid(benchmark::State& state) {
  const TiledPyramid p = fixture();
  const auto path = scratch("slimslide_bench_write.tiff");
  for (auto _ : state) benchmark::DoNotOptimize(write_pyramid(p, path));
  std::filesystem::remove(path);
}
BENCHMARK(BM_WritePyramid)->Unit(benchmark::kMillisecond);

void BM_OpenAndReadLevel(benchmark::State& state) {
  const auto path = scratch("slimslide_bench_read.tiff");
  write_pyramid(fixture(), path);
  for (auto _ : state) {
    const TiledPyramid p = open_pyramid(path);
    const PyramidLevel& lv = p.level(0);
    benchmark::DoNotOptimize(read_region(p, 0, 0, 0, lv.width_px, lv.height_px));
  }
  std::filesystem::remove(path);
}
BENCHMARK(BM_OpenAndReadLevel)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace slimslide::bench
