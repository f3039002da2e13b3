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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace risidd {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Suite names accepted by run_validation(), without "all".
std::vector<std::string> validation_suites();

// Runs one suite ("equivalence", "stationarity", "truncation", "active",
// "ao", "complexity", "ldpc") or "all". Throws std::invalid_argument for an
// unknown name.
std::vector<CheckResult> run_validation(std::string_view suite, std::uint64_t seed = 2024);

// One line per check: "PASS suite/name detail".
void print_report(std::ostream& out, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

// Individual checks, reused by the acceptance program.
CheckResult check_equivalence(int instances, std::uint64_t seed);
CheckResult check_stationarity(int instances, std::uint64_t seed);
CheckResult check_passive_grid(int instances, int grid_points, std::uint64_t seed);
CheckResult check_active_equality(int instances, std::uint64_t seed);
CheckResult check_complexity_anchor();
CheckResult check_measured_complexity(std::uint64_t seed);
CheckResult check_ldpc_awgn(int frames, double ebn0_db, std::uint64_t seed);

}  // namespace risidd
