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


#include "risidd/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

#include "risidd/modem.hpp"
#include "risidd/rng.hpp"

namespace risidd {

namespace {

using Row = std::vector<std::uint64_t>;

bool test_bit(const Row& r, int i) { return ((r[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u) != 0; }
void set_bit(Row& r, int i) { r[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }

}  // namespace

LdpcCode::LdpcCode(int n, std::vector<std::vector<int>> check_rows, int info_bits)
    : n_(n), info_bits_(info_bits), check_rows_(std::move(check_rows))
{
    if (n_ <= 0) throw std::invalid_argument("LdpcCode: n must be positive");
    var_cols_.assign(static_cast<std::size_t>(n_), {});
    for (int c = 0; c < m(); ++c) {
        auto& row = check_rows_[c];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw std::invalid_argument("LdpcCode: repeated edge in check " + std::to_string(c));
        for (int v : row) {
            if (v < 0 || v >= n_) throw std::invalid_argument("LdpcCode: variable index out of range");
            var_cols_[v].push_back(c);
        }
        row_degree_ = std::max(row_degree_, static_cast<int>(row.size()));
    }
    for (const auto& col : var_cols_) col_degree_ = std::max(col_degree_, static_cast<int>(col.size()));

    // Reduced row echelon form over GF(2).
    const std::size_t words = (static_cast<std::size_t>(n_) + 63) / 64;
    std::vector<Row> rows(check_rows_.size(), Row(words, 0));
    for (std::size_t c = 0; c < rows.size(); ++c)
        for (int v : check_rows_[c]) set_bit(rows[c], v);
    std::size_t next = 0;
    std::vector<char> is_pivot(static_cast<std::size_t>(n_), 0);
    for (int col = 0; col < n_ && next < rows.size(); ++col) {
        std::size_t sel = next;
        while (sel < rows.size() && !test_bit(rows[sel], col)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[next]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next && test_bit(rows[r], col))
                for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[next][w];
        }
        pivots_.push_back(col);
        is_pivot[col] = 1;
        ++next;
    }
    rows.resize(next);
    reduced_ = std::move(rows);

    const int free_count = n_ - rank();
    if (info_bits_ < 0 || info_bits_ > free_count)
        throw std::invalid_argument("LdpcCode: requested " + std::to_string(info_bits_) +
                                    " information bits but the code dimension is " + std::to_string(free_count));
    for (int col = 0; col < n_ && static_cast<int>(info_positions_.size()) < info_bits_; ++col)
        if (is_pivot[col] == 0) info_positions_.push_back(col);
}

Bits LdpcCode::encode(std::span<const std::uint8_t> message) const
{
    if (static_cast<int>(message.size()) != info_bits_) throw std::invalid_argument("encode: message length mismatch");
    const std::size_t words = (static_cast<std::size_t>(n_) + 63) / 64;
    Row w(words, 0);
    Bits codeword(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < info_bits_; ++i) {
        if ((message[i] & 1u) != 0) {
            set_bit(w, info_positions_[i]);
            codeword[info_positions_[i]] = 1;
        }
    }
    for (std::size_t j = 0; j < reduced_.size(); ++j) {
        int parity = 0;
        for (std::size_t k = 0; k < words; ++k) parity ^= std::popcount(reduced_[j][k] & w[k]) & 1;
        codeword[pivots_[j]] = static_cast<std::uint8_t>(parity);
    }
    return codeword;
}

Bits LdpcCode::extract_message(std::span<const std::uint8_t> codeword) const
{
    if (static_cast<int>(codeword.size()) != n_) throw std::invalid_argument("extract_message: length mismatch");
    Bits msg(static_cast<std::size_t>(info_bits_));
    for (int i = 0; i < info_bits_; ++i) msg[i] = codeword[info_positions_[i]];
    return msg;
}

bool LdpcCode::satisfies_checks(std::span<const std::uint8_t> word) const
{
    if (static_cast<int>(word.size()) != n_) return false;
    for (const auto& row : check_rows_) {
        int parity = 0;
        for (int v : row) parity ^= word[v] & 1;
        if (parity != 0) return false;
    }
    return true;
}

std::vector<Bits> LdpcCode::generator() const
{
    std::vector<Bits> g;
    g.reserve(static_cast<std::size_t>(info_bits_));
    Bits unit(static_cast<std::size_t>(info_bits_), 0);
    for (int i = 0; i < info_bits_; ++i) {
        unit[i] = 1;
        g.push_back(encode(unit));
        unit[i] = 0;
    }
    return g;
}

LdpcCode build_code(int n, double rate, int col_degree, std::uint64_t seed)
{
    const double k_real = n * rate;
    if (n <= 0 || !(rate > 0.0) || rate >= 1.0 || std::abs(k_real - std::round(k_real)) > 1e-9)
        throw std::invalid_argument("build_code: n * rate must be a positive integer below n");
    const int k_info = static_cast<int>(std::round(k_real));
    const int m = n - k_info;
    if (col_degree < 1 || col_degree > m) throw std::invalid_argument("build_code: infeasible column degree");
    const long edges = static_cast<long>(n) * col_degree;
    const int max_row = static_cast<int>((edges + m - 1) / m);

    Rng rng = seeded_rng(seed, 0x1d9cull);
    std::vector<std::vector<int>> checks(static_cast<std::size_t>(m));
    std::vector<std::vector<int>> vars(static_cast<std::size_t>(n));
    std::vector<int> dist(static_cast<std::size_t>(m));
    std::vector<char> var_seen(static_cast<std::size_t>(n));
    constexpr int kUnreached = std::numeric_limits<int>::max();

    for (int v = 0; v < n; ++v) {
        for (int e = 0; e < col_degree; ++e) {
            // BFS distances (in check hops) from v through the current graph
            std::fill(dist.begin(), dist.end(), kUnreached);
            std::fill(var_seen.begin(), var_seen.end(), 0);
            std::queue<int> frontier;
            var_seen[v] = 1;
            for (int c : vars[v]) {
                dist[c] = 0;
                frontier.push(c);
            }
            while (!frontier.empty()) {
                const int c = frontier.front();
                frontier.pop();
                for (int u : checks[c]) {
                    if (var_seen[u] != 0) continue;
                    var_seen[u] = 1;
                    for (int c2 : vars[u]) {
                        if (dist[c2] == kUnreached) {
                            dist[c2] = dist[c] + 1;
                            frontier.push(c2);
                        }
                    }
                }
            }
            int best_dist = -1;
            int best_deg = kUnreached;
            std::vector<int> candidates;
            for (int c = 0; c < m; ++c) {
                const int deg = static_cast<int>(checks[c].size());
                if (deg >= max_row || dist[c] == 0) continue;
                if (dist[c] > best_dist || (dist[c] == best_dist && deg < best_deg)) {
                    best_dist = dist[c];
                    best_deg = deg;
                    candidates.assign(1, c);
                } else if (dist[c] == best_dist && deg == best_deg) {
                    candidates.push_back(c);
                }
            }
            if (candidates.empty())
                throw std::invalid_argument("build_code: degree combination cannot be completed");
            const int pick = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
            checks[pick].push_back(v);
            vars[v].push_back(pick);
        }
    }
    return LdpcCode(n, std::move(checks), k_info);
}

DecodeResult decode(const LdpcCode& code, std::span<const double> channel_llr, const DecodeOptions& options)
{
    const int n = code.n();
    if (static_cast<int>(channel_llr.size()) != n) throw std::invalid_argument("decode: LLR length mismatch");
    const auto& rows = code.check_rows();

    // Edge layout grouped by check; v2c/c2v messages use L = ln P(0)/P(1).
    std::vector<int> offsets(rows.size() + 1, 0);
    for (std::size_t c = 0; c < rows.size(); ++c) offsets[c + 1] = offsets[c] + static_cast<int>(rows[c].size());
    const int n_edges = offsets.back();
    std::vector<int> edge_var(static_cast<std::size_t>(n_edges));
    for (std::size_t c = 0; c < rows.size(); ++c)
        std::copy(rows[c].begin(), rows[c].end(), edge_var.begin() + offsets[c]);

    std::vector<double> prior(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) prior[v] = -clamp_llr(channel_llr[v]);

    std::vector<double> v2c(static_cast<std::size_t>(n_edges));
    std::vector<double> c2v(static_cast<std::size_t>(n_edges), 0.0);
    std::vector<double> total(prior);
    std::vector<double> scratch;
    std::vector<double> tanh_half;

    DecodeResult result;
    result.hard_bits.assign(static_cast<std::size_t>(n), 0);
    for (int e = 0; e < n_edges; ++e) v2c[e] = prior[edge_var[e]];

    const auto hard_decide = [&] {
        for (int v = 0; v < n; ++v) result.hard_bits[v] = total[v] < 0.0 ? 1 : 0;
    };

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        for (std::size_t c = 0; c < rows.size(); ++c) {
            const int begin = offsets[c];
            const int deg = offsets[c + 1] - begin;
            if (options.min_sum) {
                double min1 = std::numeric_limits<double>::infinity(), min2 = min1;
                int min_idx = -1;
                int sign = 1;
                for (int i = 0; i < deg; ++i) {
                    const double m = v2c[begin + i];
                    if (m < 0.0) sign = -sign;
                    const double a = std::abs(m);
                    if (a < min1) {
                        min2 = min1;
                        min1 = a;
                        min_idx = i;
                    } else if (a < min2) {
                        min2 = a;
                    }
                }
                for (int i = 0; i < deg; ++i) {
                    const double m = v2c[begin + i];
                    const int s = m < 0.0 ? -sign : sign;
                    c2v[begin + i] = s * options.min_sum_scale * (i == min_idx ? min2 : min1);
                }
            } else {
                // forward/backward products of tanh(m/2), exclusive of self
                scratch.assign(static_cast<std::size_t>(deg) + 1, 1.0);
                tanh_half.resize(static_cast<std::size_t>(deg));
                for (int i = 0; i < deg; ++i) {
                    tanh_half[i] = std::tanh(0.5 * v2c[begin + i]);
                    scratch[i + 1] = scratch[i] * tanh_half[i];
                }
                double backward = 1.0;
                for (int i = deg - 1; i >= 0; --i) {
                    const double p = std::clamp(scratch[i] * backward, -1.0 + 1e-15, 1.0 - 1e-15);
                    c2v[begin + i] = std::clamp(2.0 * std::atanh(p), -kLlrClamp, kLlrClamp);
                    backward *= tanh_half[i];
                }
            }
        }
        total = prior;
        for (int e = 0; e < n_edges; ++e) total[edge_var[e]] += c2v[e];
        for (int e = 0; e < n_edges; ++e) v2c[e] = std::clamp(total[edge_var[e]] - c2v[e], -kLlrClamp, kLlrClamp);
        hard_decide();
        result.iterations_used = iter;
        if (code.satisfies_checks(result.hard_bits)) {
            result.parity_ok = true;
            break;
        }
    }

    result.posterior_llr.resize(static_cast<std::size_t>(n));
    result.extrinsic_llr.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        result.posterior_llr[v] = -total[v];
        result.extrinsic_llr[v] = -(total[v] - prior[v]);
    }
    return result;
}

void write_alist(std::ostream& out, const LdpcCode& code)
{
    const auto& cols = code.var_cols();
    const auto& rows = code.check_rows();
    out << code.n() << ' ' << code.m() << '\n' << code.col_degree() << ' ' << code.row_degree() << '\n';
    for (std::size_t v = 0; v < cols.size(); ++v) out << cols[v].size() << (v + 1 < cols.size() ? ' ' : '\n');
    for (std::size_t c = 0; c < rows.size(); ++c) out << rows[c].size() << (c + 1 < rows.size() ? ' ' : '\n');
    const auto emit = [&](const std::vector<int>& list, int width) {
        for (int i = 0; i < width; ++i) {
            out << (i < static_cast<int>(list.size()) ? list[i] + 1 : 0) << (i + 1 < width ? ' ' : '\n');
        }
    };
    for (const auto& col : cols) emit(col, code.col_degree());
    for (const auto& row : rows) emit(row, code.row_degree());
}

LdpcCode read_alist(std::istream& in)
{
    int n = 0, m = 0, max_col = 0, max_row = 0;
    if (!(in >> n >> m >> max_col >> max_row) || n <= 0 || m <= 0 || max_col <= 0 || max_row <= 0)
        throw std::runtime_error("read_alist: malformed header");
    std::vector<int> col_deg(static_cast<std::size_t>(n)), row_deg(static_cast<std::size_t>(m));
    for (auto& d : col_deg)
        if (!(in >> d)) throw std::runtime_error("read_alist: truncated column degrees");
    for (auto& d : row_deg)
        if (!(in >> d)) throw std::runtime_error("read_alist: truncated row degrees");
    // Column lists are redundant with the row lists; read and discard after
    // skipping zero padding.
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < max_col; ++i) {
            int idx = 0;
            if (!(in >> idx)) throw std::runtime_error("read_alist: truncated column lists");
        }
    }
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        for (int i = 0; i < max_row; ++i) {
            int idx = 0;
            if (!(in >> idx)) throw std::runtime_error("read_alist: truncated row lists");
            if (idx > 0) rows[c].push_back(idx - 1);
        }
        if (static_cast<int>(rows[c].size()) != row_deg[c]) throw std::runtime_error("read_alist: row degree mismatch");
    }
    // Dimension is n - rank; a provisional object yields the rank.
    const LdpcCode probe(n, rows, 0);
    return LdpcCode(n, std::move(rows), n - probe.rank());
}

}  // namespace risidd
