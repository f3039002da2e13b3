// SPDX-License-Identifier: Apache-2.0
//
// risidd - link-level simulator for RIS-assisted iterative detection and decoding
// Copyright (C) 2026 The risidd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

#include <cstdint>
#include <map>
#include <utility>

namespace risidd {

// Counts complex multiply-adds in the instrumented numerical kernels.
// Per-worker; merge() by summation.
struct OpCounter {
    std::uint64_t complex_mul_adds = 0;
    // (system size, right-hand-side count) -> number of factor/solve events
    std::map<std::pair<int, int>, std::uint64_t> cholesky_solves;

    void add(std::uint64_t n) { complex_mul_adds += n; }
    void record_cholesky(int size, int rhs);
    void merge(const OpCounter& other);
    std::uint64_t factorizations() const;
};

inline void count(OpCounter* counter, std::uint64_t n)
{
    if (counter != nullptr) counter->add(n);
}

}  // namespace risidd
