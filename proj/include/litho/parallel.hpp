// Copyright 2026 The Lithoforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace litho {

/// Sets the worker count used by parallel_for. 0 restores the hardware
/// default. Output of every library operation is bit-identical for any
/// setting; this only trades wall-clock time.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs fn(i) for i in [begin, end) split into contiguous index blocks.
/// Each index is processed exactly once and writes must be disjoint per
/// index, so results do not depend on the worker count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

}  // namespace litho
