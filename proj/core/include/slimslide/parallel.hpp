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

#pragma once

#include <cstddef>
#include <functional>

namespace slimslide {

/// Environment variable consulted by default_thread_count().
inline constexpr const char* kThreadsEnvVar = "SLIMSLIDE_THREADS";

/// SLIMSLIDE_THREADS if set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
unsigned default_thread_count();

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Indices are handed out dynamically. The first exception thrown by any
/// call is rethrown on the caller after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace slimslide
