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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "risidd/op_counter.hpp"

namespace risidd {

// Optimization methods of the complexity comparison; only kApRis is
// implemented in this library, the others are reported by formula.
enum class Method { kApRis, kMmAo, kSdr, kPdd, kCe, kAdmm };

std::string_view to_string(Method m);
Method parse_method(std::string_view text);
std::vector<Method> all_methods();

struct ComplexityParams {
    int users = 12;         // K
    int antennas = 32;      // M
    int elements = 64;      // N
    int iterations = 5;     // I_mu, shared by every iterative loop
    int cvx_iterations = 5; // I_cvx
    double epsilon = 1e-3;  // CVX accuracy in log(1/eps)
};

// Leading-order flop count of the method. Throws std::invalid_argument on
// non-positive K, M or iteration counts (N may be zero).
double flops(Method m, const ComplexityParams& p);

// Human-readable leading-order expression.
std::string_view formula(Method m);

struct MeasuredRatio {
    double measured = 0.0;
    double model = 0.0;
    double ratio = 0.0;
    bool within_bounds = false;  // ratio in [0.5, 2]
};

MeasuredRatio measured_vs_model(const OpCounter& counter, double model);

// CSV table: method,formula,count
void write_complexity_table(std::ostream& out, const ComplexityParams& p);

}  // namespace risidd
