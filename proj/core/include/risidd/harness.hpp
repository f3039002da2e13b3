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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "risidd/config.hpp"
#include "risidd/ldpc.hpp"
#include "risidd/op_counter.hpp"

namespace risidd {

enum class Scheme { kLmmseWoRis, kLmmsePRis, kLmmseARis, kIddWoRis, kIddPRis, kIddARis };
enum class CsiMode { kPerfect, kEstimated };

std::string_view to_string(Scheme s);
std::string_view to_string(CsiMode c);
// Accepts "LMMSE-WO-RIS", "IDD-P-RIS", ... and an optional "-<tau>" suffix
// on IDD names (returned through tau when non-null).
Scheme parse_scheme(std::string_view text, int* tau = nullptr);
CsiMode parse_csi_mode(std::string_view text);
RisMode scheme_ris_mode(Scheme s);
bool scheme_is_iterative(Scheme s);

struct BlockOutcome {
    std::vector<std::uint64_t> errors_per_iteration;  // info-bit errors after each IDD pass
    std::uint64_t info_bits = 0;
    double sum_rate = 0.0;  // bits/s/Hz, linear-MMSE SINR on the true channel
};

// Simulates coded blocks for one scenario. The LDPC code is built once and
// shared; run_block() is const and safe to call from several threads.
class LinkSimulator {
public:
    explicit LinkSimulator(SystemConfig cfg);

    const SystemConfig& config() const { return cfg_; }
    const LdpcCode& code() const { return *code_; }

    // One fading block: geometry and channels, optional CSI estimation,
    // reflection design, LDPC-coded QPSK transmission and tau detection /
    // decoding passes. cfg overrides power and scheme-independent settings
    // of the constructor config except the code.
    BlockOutcome run_block(const SystemConfig& cfg, Scheme scheme, int tau, CsiMode csi, std::uint64_t seed,
                           std::uint64_t block_index, OpCounter* counter = nullptr) const;

    // Sum rate only (no payload).
    double block_sum_rate(const SystemConfig& cfg, Scheme scheme, CsiMode csi, std::uint64_t seed,
                          std::uint64_t block_index) const;

private:
    SystemConfig cfg_;
    std::shared_ptr<const LdpcCode> code_;
};

enum class Measure { kBer, kSumRate };

struct SweepSpec {
    std::vector<double> power_grid_dbm;  // P_T / K, strictly increasing
    Scheme scheme = Scheme::kIddPRis;
    int tau = 3;
    CsiMode csi = CsiMode::kPerfect;
    Measure measure = Measure::kBer;
    std::uint64_t min_errors = 100;
    std::uint64_t min_blocks = 0;
    std::uint64_t max_blocks = 2000;
    int batch_size = 8;
    int threads = 1;
    std::uint64_t seed = 1;
};

struct ResultRow {
    double power_dbm = 0.0;
    Scheme scheme = Scheme::kIddPRis;
    int tau = 1;
    CsiMode csi = CsiMode::kPerfect;
    std::uint64_t blocks = 0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double sum_rate = 0.0;
    std::vector<double> ber_per_iteration;
};

// Throws ConfigError on an invalid spec (non-increasing grid, bad counts).
void validate_spec(const SweepSpec& spec);

// Deterministic for a fixed seed regardless of spec.threads: blocks run in
// fixed-size batches, each block on its own streams, and the stop rule is
// evaluated between batches.
std::vector<ResultRow> run_sweep(const LinkSimulator& sim, const SweepSpec& spec);

struct CsvMetadata {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string version;
};

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, const CsvMetadata& meta);

// Power at which the BER curve first falls to target, interpolating
// log10(BER) linearly between neighbouring grid points. iteration selects an
// entry of ber_per_iteration (-1 = final). Points without errors count as
// half an error. Returns NaN when the curve never crosses or already starts
// at or below target.
double crossing_power(const std::vector<ResultRow>& rows, double target, int iteration = -1);

// Parses "a:step:b" (inclusive) or a comma list.
std::vector<double> parse_power_grid(std::string_view text);

}  // namespace risidd
