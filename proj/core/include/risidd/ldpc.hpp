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
#include <span>
#include <vector>

namespace risidd {

using Bits = std::vector<std::uint8_t>;

// Binary LDPC code given by a sparse parity-check matrix, with a systematic
// encoder derived by Gaussian elimination over GF(2). When H is rank
// deficient the surplus free positions are frozen to zero, so the rate is
// always info_bits() / n().
class LdpcCode {
public:
    // check_rows[c] lists the variable indices of check c.
    LdpcCode(int n, std::vector<std::vector<int>> check_rows, int info_bits);

    int n() const { return n_; }
    int m() const { return static_cast<int>(check_rows_.size()); }
    int info_bits() const { return info_bits_; }
    int rank() const { return static_cast<int>(pivots_.size()); }
    int col_degree() const { return col_degree_; }
    int row_degree() const { return row_degree_; }
    double rate() const { return static_cast<double>(info_bits_) / n_; }

    const std::vector<std::vector<int>>& check_rows() const { return check_rows_; }
    const std::vector<std::vector<int>>& var_cols() const { return var_cols_; }
    // Codeword positions carrying the message, in message order.
    const std::vector<int>& info_positions() const { return info_positions_; }

    Bits encode(std::span<const std::uint8_t> message) const;
    Bits extract_message(std::span<const std::uint8_t> codeword) const;
    bool satisfies_checks(std::span<const std::uint8_t> word) const;

    // Dense k x n systematic generator (rows are encoded unit messages).
    std::vector<Bits> generator() const;

    bool operator==(const LdpcCode& other) const { return check_rows_ == other.check_rows_ && n_ == other.n_; }

private:
    int n_;
    int info_bits_;
    int col_degree_ = 0;
    int row_degree_ = 0;
    std::vector<std::vector<int>> check_rows_;
    std::vector<std::vector<int>> var_cols_;
    std::vector<int> info_positions_;
    std::vector<int> pivots_;
    std::vector<std::vector<std::uint64_t>> reduced_;  // RREF rows as bitsets
};

// Regular code by progressive edge growth: every variable node gets
// col_degree edges, each placed on the check farthest from the node in the
// current graph, ties broken by lowest check degree and then by the seeded
// RNG. Check degrees never exceed ceil(n * col_degree / m). Throws
// std::invalid_argument when n * rate is not integral or the degrees are
// infeasible.
LdpcCode build_code(int n, double rate, int col_degree, std::uint64_t seed);

struct DecodeOptions {
    int max_iterations = 10;
    bool min_sum = false;
    double min_sum_scale = 0.75;
};

struct DecodeResult {
    Bits hard_bits;
    std::vector<double> posterior_llr;
    std::vector<double> extrinsic_llr;  // posterior minus (clamped) channel LLR
    bool parity_ok = false;
    int iterations_used = 0;
};

// Flooding sum-product decoding (tanh rule, or normalized min-sum).
// Input and output LLRs use L = ln P(1)/P(0) and are clamped at +-30.
DecodeResult decode(const LdpcCode& code, std::span<const double> channel_llr, const DecodeOptions& options = {});

// alist text format (MacKay), 1-based indices, zero padding accepted.
void write_alist(std::ostream& out, const LdpcCode& code);
// Rate of the returned code is (n - rank) / n rounded down to whole bits.
LdpcCode read_alist(std::istream& in);

}  // namespace risidd
