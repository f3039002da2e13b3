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


#include "risidd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "risidd/channel.hpp"
#include "risidd/csi.hpp"
#include "risidd/detector.hpp"
#include "risidd/modem.hpp"
#include "risidd/ris_optimizer.hpp"
#include "risidd/rng.hpp"

namespace risidd {

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::kLmmseWoRis: return "LMMSE-WO-RIS";
    case Scheme::kLmmsePRis: return "LMMSE-P-RIS";
    case Scheme::kLmmseARis: return "LMMSE-A-RIS";
    case Scheme::kIddWoRis: return "IDD-WO-RIS";
    case Scheme::kIddPRis: return "IDD-P-RIS";
    case Scheme::kIddARis: return "IDD-A-RIS";
    }
    return "?";
}

std::string_view to_string(CsiMode c)
{
    return c == CsiMode::kPerfect ? "perfect" : "estimated";
}

Scheme parse_scheme(std::string_view text, int* tau)
{
    for (Scheme s : {Scheme::kLmmseWoRis, Scheme::kLmmsePRis, Scheme::kLmmseARis, Scheme::kIddWoRis,
                     Scheme::kIddPRis, Scheme::kIddARis}) {
        const auto name = to_string(s);
        if (text == name) return s;
        if (scheme_is_iterative(s) && text.size() > name.size() + 1 && text.substr(0, name.size()) == name &&
            text[name.size()] == '-') {
            const std::string digits(text.substr(name.size() + 1));
            if (digits.find_first_not_of("0123456789") == std::string::npos) {
                if (tau != nullptr) *tau = std::stoi(digits);
                return s;
            }
        }
    }
    throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

CsiMode parse_csi_mode(std::string_view text)
{
    if (text == "perfect") return CsiMode::kPerfect;
    if (text == "estimated") return CsiMode::kEstimated;
    throw ConfigError("unknown csi mode '" + std::string(text) + "'");
}

RisMode scheme_ris_mode(Scheme s)
{
    switch (s) {
    case Scheme::kLmmseWoRis:
    case Scheme::kIddWoRis: return RisMode::kNone;
    case Scheme::kLmmsePRis:
    case Scheme::kIddPRis: return RisMode::kPassive;
    case Scheme::kLmmseARis:
    case Scheme::kIddARis: return RisMode::kActive;
    }
    return RisMode::kNone;
}

bool scheme_is_iterative(Scheme s)
{
    return s == Scheme::kIddWoRis || s == Scheme::kIddPRis || s == Scheme::kIddARis;
}

LinkSimulator::LinkSimulator(SystemConfig cfg) : cfg_(std::move(cfg))
{
    cfg_.validate();
    code_ = std::make_shared<const LdpcCode>(build_code(cfg_.code_n, cfg_.code_rate, cfg_.code_col_degree, cfg_.code_seed));
}

namespace {

struct LinkSetup {
    SystemConfig cfg;
    DerivedPowers powers;
    RisDesignParams params;
    ChannelSet channels;
    CMat heq_true;
    CMat heq_receiver;
    CVec phi;
    double loading = 0.0;
};

// Channel draw, optional estimation and reflection design for one block.
LinkSetup prepare_link(const SystemConfig& base, Scheme scheme, CsiMode csi, std::uint64_t seed,
                       std::uint64_t block, OpCounter* counter)
{
    LinkSetup s;
    s.cfg = base;
    s.cfg.ris_mode = scheme_ris_mode(scheme);
    s.powers = derive_powers(s.cfg);
    s.params = design_params(s.cfg, s.powers);

    Rng geo_rng = seeded_rng(seed, block_stream(block, StreamPurpose::kGeometry));
    const Geometry geom = draw_geometry(s.cfg, geo_rng);
    Rng fading_rng = seeded_rng(seed, block_stream(block, StreamPurpose::kSmallScale));
    const auto fading = draw_small_scale(s.cfg.ap_antennas, s.cfg.ris_elements, s.cfg.users, fading_rng);
    s.channels = apply_large_scale(fading, geom, s.cfg);

    RisDesignInputs inputs = design_inputs(s.channels);
    CsiEstimate estimate;
    if (csi == CsiMode::kEstimated) {
        Rng pilot_rng = seeded_rng(seed, block_stream(block, StreamPurpose::kPilots));
        const auto plan = make_pilot_plan(s.channels.elements(), s.cfg.pilot_len, s.powers.user_power_mw,
                                          dbm_to_linear(s.cfg.estimation_noise_dbm));
        estimate = estimate_csi(s.channels, plan, pilot_rng);
        inputs.direct = estimate.direct;
        inputs.cascaded = estimate.cascaded;
    }

    Rng ao_rng = seeded_rng(seed, block_stream(block, StreamPurpose::kAoInit));
    const AoResult ao = alternating_optimize(inputs, s.params, ao_rng, counter);
    s.phi = ao.reflection.phi;
    s.heq_true = equivalent_channel(s.channels, s.phi);
    s.heq_receiver = csi == CsiMode::kEstimated ? rebuild_equivalent(estimate, s.phi) : s.heq_true;
    s.loading = noise_loading(s.params.static_noise, s.params.ris_noise, s.channels.g_loss, s.phi.squaredNorm(),
                              s.params.sigma_x2);
    return s;
}

double sum_rate_of(const LinkSetup& s)
{
    return linear_mmse_state(s.heq_true, s.loading, s.params.sigma_x2).sum_rate();
}

}  // namespace

BlockOutcome LinkSimulator::run_block(const SystemConfig& cfg, Scheme scheme, int tau, CsiMode csi,
                                      std::uint64_t seed, std::uint64_t block_index, OpCounter* counter) const
{
    if (cfg.code_n != cfg_.code_n || cfg.code_rate != cfg_.code_rate)
        throw ConfigError("run_block: code parameters differ from the simulator's code");
    if (!scheme_is_iterative(scheme)) tau = 1;
    if (tau < 1) throw ConfigError("run_block: tau must be >= 1");

    const LinkSetup s = prepare_link(cfg, scheme, csi, seed, block_index, counter);
    const int users = s.cfg.users;
    const auto& code = *code_;
    const auto qpsk = Constellation::qpsk(s.params.sigma_x2);
    const int periods = code.n() / qpsk.bits_per_symbol();

    // payload
    Rng payload_rng = seeded_rng(seed, block_stream(block_index, StreamPurpose::kPayload));
    std::bernoulli_distribution coin(0.5);
    std::vector<Bits> messages(static_cast<std::size_t>(users));
    CMat x(users, periods);
    for (int k = 0; k < users; ++k) {
        messages[k].resize(static_cast<std::size_t>(code.info_bits()));
        for (auto& b : messages[k]) b = coin(payload_rng) ? 1 : 0;
        const auto symbols = qpsk.map_bits(code.encode(messages[k]));
        for (int t = 0; t < periods; ++t) x(k, t) = symbols[t];
    }

    // y = Hbar X + G diag(phi) N_v + N_s; static noise drawn first so that
    // schemes share it
    Rng noise_rng = seeded_rng(seed, block_stream(block_index, StreamPurpose::kNoise));
    const int m = s.cfg.ap_antennas;
    CMat y = s.heq_true * x;
    for (int t = 0; t < periods; ++t)
        for (int a = 0; a < m; ++a) y(a, t) += complex_normal(noise_rng, s.params.static_noise);
    if (s.phi.size() > 0 && s.params.ris_noise > 0.0) {
        CMat nv(s.phi.size(), periods);
        for (int t = 0; t < periods; ++t)
            for (Eigen::Index e = 0; e < nv.rows(); ++e) nv(e, t) = complex_normal(noise_rng, s.params.ris_noise);
        y += s.channels.ap_ris * s.phi.asDiagonal() * nv;
    }

    const SoftSicDetector detector(qpsk, s.loading);
    DecodeOptions options;
    options.max_iterations = s.cfg.ldpc_iterations;
    options.min_sum = s.cfg.ldpc_min_sum;

    BlockOutcome outcome;
    outcome.info_bits = static_cast<std::uint64_t>(users) * code.info_bits();
    outcome.errors_per_iteration.assign(static_cast<std::size_t>(tau), 0);
    std::vector<std::vector<double>> priors(static_cast<std::size_t>(users));
    for (int pass = 0; pass < tau; ++pass) {
        const auto detected = detector.detect(y, s.heq_receiver, priors, counter);
        for (int k = 0; k < users; ++k) {
            const auto result = decode(code, detected.llr[k], options);
            const auto decided = code.extract_message(result.hard_bits);
            std::uint64_t errors = 0;
            for (std::size_t i = 0; i < decided.size(); ++i) errors += decided[i] != messages[k][i] ? 1u : 0u;
            outcome.errors_per_iteration[pass] += errors;
            priors[k] = result.extrinsic_llr;
        }
    }
    outcome.sum_rate = sum_rate_of(s);
    return outcome;
}

double LinkSimulator::block_sum_rate(const SystemConfig& cfg, Scheme scheme, CsiMode csi, std::uint64_t seed,
                                     std::uint64_t block_index) const
{
    return sum_rate_of(prepare_link(cfg, scheme, csi, seed, block_index, nullptr));
}

void validate_spec(const SweepSpec& spec)
{
    for (std::size_t i = 1; i < spec.power_grid_dbm.size(); ++i)
        if (!(spec.power_grid_dbm[i] > spec.power_grid_dbm[i - 1]))
            throw ConfigError("power grid must be strictly increasing");
    if (spec.max_blocks < 1) throw ConfigError("max_blocks must be >= 1");
    if (spec.batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (spec.threads < 1) throw ConfigError("threads must be >= 1");
    if (spec.tau < 1) throw ConfigError("tau must be >= 1");
}

std::vector<ResultRow> run_sweep(const LinkSimulator& sim, const SweepSpec& spec)
{
    validate_spec(spec);
    const int tau = scheme_is_iterative(spec.scheme) ? spec.tau : 1;
    std::vector<ResultRow> rows;
    for (double power : spec.power_grid_dbm) {
        SystemConfig cfg = sim.config();
        set_power_per_user_dbm(cfg, power);

        ResultRow row;
        row.power_dbm = power;
        row.scheme = spec.scheme;
        row.tau = tau;
        row.csi = spec.csi;
        std::vector<std::uint64_t> errors(static_cast<std::size_t>(tau), 0);
        double rate_sum = 0.0;

        std::uint64_t next_block = 0;
        while (next_block < spec.max_blocks) {
            const std::uint64_t batch = std::min<std::uint64_t>(spec.batch_size, spec.max_blocks - next_block);
            std::vector<BlockOutcome> outcomes(batch);
            std::atomic<std::uint64_t> cursor{0};
            const auto worker = [&] {
                for (std::uint64_t i = cursor++; i < batch; i = cursor++) {
                    const std::uint64_t block = next_block + i;
                    if (spec.measure == Measure::kSumRate) {
                        outcomes[i].sum_rate = sim.block_sum_rate(cfg, spec.scheme, spec.csi, spec.seed, block);
                    } else {
                        outcomes[i] = sim.run_block(cfg, spec.scheme, tau, spec.csi, spec.seed, block);
                    }
                }
            };
            const int threads = static_cast<int>(std::min<std::uint64_t>(spec.threads, batch));
            if (threads <= 1) {
                worker();
            } else {
                std::vector<std::jthread> pool;
                for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            }
            // aggregate in block order
            for (const auto& o : outcomes) {
                for (std::size_t p = 0; p < o.errors_per_iteration.size(); ++p) errors[p] += o.errors_per_iteration[p];
                row.bits += o.info_bits;
                rate_sum += o.sum_rate;
            }
            next_block += batch;
            if (spec.measure == Measure::kBer && errors.back() >= spec.min_errors && next_block >= spec.min_blocks)
                break;
        }
        row.blocks = next_block;
        row.bit_errors = errors.back();
        row.sum_rate = rate_sum / static_cast<double>(row.blocks);
        if (row.bits > 0) {
            row.ber = static_cast<double>(row.bit_errors) / static_cast<double>(row.bits);
            for (auto e : errors) row.ber_per_iteration.push_back(static_cast<double>(e) / static_cast<double>(row.bits));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, const CsvMetadata& meta)
{
    out << "# risidd " << meta.version << " config_hash=" << std::hex << std::setw(16) << std::setfill('0')
        << meta.config_hash << std::dec << std::setfill(' ') << " seed=" << meta.seed << '\n';
    out << "scheme,tau,csi,power_per_user_dbm,blocks,bits,bit_errors,ber,sum_rate,ber_per_iteration\n";
    std::ostringstream line;
    for (const auto& r : rows) {
        out << to_string(r.scheme) << ',' << r.tau << ',' << to_string(r.csi) << ',' << std::setprecision(6)
            << r.power_dbm << ',' << r.blocks << ',' << r.bits << ',' << r.bit_errors << ',' << std::setprecision(10)
            << r.ber << ',' << r.sum_rate << ',';
        for (std::size_t i = 0; i < r.ber_per_iteration.size(); ++i)
            out << (i > 0 ? ";" : "") << r.ber_per_iteration[i];
        out << '\n';
    }
}

double crossing_power(const std::vector<ResultRow>& rows, double target, int iteration)
{
    const auto ber_of = [&](const ResultRow& r) {
        double b = r.ber;
        if (iteration >= 0) {
            if (static_cast<std::size_t>(iteration) >= r.ber_per_iteration.size())
                throw std::out_of_range("crossing_power: iteration not recorded");
            b = r.ber_per_iteration[iteration];
        }
        if (b <= 0.0 && r.bits > 0) b = 0.5 / static_cast<double>(r.bits);
        return b;
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double b = ber_of(rows[i]);
        if (b > target) continue;
        if (i == 0) return std::numeric_limits<double>::quiet_NaN();
        const double b0 = std::log10(ber_of(rows[i - 1]));
        const double b1 = std::log10(b);
        const double t = (b0 - std::log10(target)) / (b0 - b1);
        return rows[i - 1].power_dbm + t * (rows[i].power_dbm - rows[i - 1].power_dbm);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> parse_power_grid(std::string_view text)
{
    std::vector<double> grid;
    const std::string s(text);
    if (s.empty()) return grid;
    if (s.find(':') != std::string::npos) {
        double a = 0, step = 0, b = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(s);
        if (!(in >> a >> c1 >> step >> c2 >> b) || c1 != ':' || c2 != ':' || !(step > 0.0))
            throw ConfigError("power grid must look like start:step:stop");
        const int count = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) grid.push_back(a + i * step);
        return grid;
    }
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad power value '" + item + "'");
        }
    }
    return grid;
}

}  // namespace risidd
