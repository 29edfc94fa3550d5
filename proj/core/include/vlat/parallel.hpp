// Copyright 2026 The vlat Authors
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

namespace vlat {

/// Worker count for internal parallel loops. Honors the VLAT_THREADS
/// environment variable as an upper bound; defaults to the hardware
/// concurrency.
std::size_t thread_cap();

/// Runs body(i) for i in [begin, end) on up to thread_cap() threads.
/// Indices are split into contiguous chunks; body must only write to
/// per-index state.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace vlat
