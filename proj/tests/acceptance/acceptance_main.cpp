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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "risidd/config.hpp"
#include "risidd/harness.hpp"
#include "risidd/validation.hpp"

using namespace risidd;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<ResultRow> sweep(const LinkSimulator& sim, Scheme scheme, int tau, CsiMode csi, std::vector<double> grid,
                             std::uint64_t min_errors, std::uint64_t min_blocks, std::uint64_t max_blocks,
                             std::uint64_t seed = 11)
{
    SweepSpec spec;
    spec.power_grid_dbm = std::move(grid);
    spec.scheme = scheme;
    spec.tau = tau;
    spec.csi = csi;
    spec.min_errors = min_errors;
    spec.min_blocks = min_blocks;
    spec.max_blocks = max_blocks;
    spec.seed = seed;
    return run_sweep(sim, spec);
}

std::string curve(const std::vector<ResultRow>& rows)
{
    std::string s;
    for (const auto& r : rows) s += fmt(" %.2f:%.2e", r.power_dbm, r.ber);
    return s;
}

std::vector<double> grid(double a, double step, double b)
{
    std::vector<double> g;
    for (double p = a; p <= b + 1e-9; p += step) g.push_back(p);
    return g;
}

Outcome from_check(const CheckResult& r, double elapsed, double budget)
{
    const bool in_time = budget <= 0.0 || elapsed < budget;
    return {r.pass && in_time, r.detail + fmt(" runtime=%.2fs", elapsed)};
}

Outcome c1_equivalence()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = check_equivalence(100, 1);
    return from_check(r, seconds_since(t0), 10.0);
}

Outcome c2_stationarity()
{
    const auto t0 = std::chrono::steady_clock::now();
    return from_check(check_stationarity(50, 2), seconds_since(t0), 0.0);
}

Outcome c3_passive_grid()
{
    const auto t0 = std::chrono::steady_clock::now();
    return from_check(check_passive_grid(20, 720, 3), seconds_since(t0), 30.0);
}

Outcome c4_active()
{
    const auto t0 = std::chrono::steady_clock::now();
    return from_check(check_active_equality(100, 4), seconds_since(t0), 0.0);
}

Outcome c5_complexity()
{
    const auto anchor = check_complexity_anchor();
    const auto measured = check_measured_complexity(5);
    return {anchor.pass && measured.pass, anchor.detail + " " + measured.detail};
}

Outcome c6_idd_gain()
{
    const LinkSimulator sim(scenario_preset("scenario1"));
    const auto g = grid(1.0, 0.5, 6.0);
    const auto wo = sweep(sim, Scheme::kIddWoRis, 3, CsiMode::kPerfect, g, 100, 0, 400);
    const auto pr = sweep(sim, Scheme::kIddPRis, 3, CsiMode::kPerfect, g, 100, 0, 400);
    const double p_wo = crossing_power(wo, 1e-3);
    const double p_pr = crossing_power(pr, 1e-3);
    const double gain = p_wo - p_pr;
    return {std::isfinite(gain) && gain >= 1.5,
            fmt("power_at_1e-3: wo=%.2f p=%.2f gain=%.2fdB (need >= 1.5)", p_wo, p_pr, gain) + " wo:" + curve(wo) +
                " p:" + curve(pr)};
}

Outcome c7_iteration_order()
{
    const LinkSimulator sim(scenario_preset("scenario1"));
    const auto rows = sweep(sim, Scheme::kIddPRis, 3, CsiMode::kPerfect, grid(2.5, 0.5, 5.0), 0, 200, 200);
    int mid_points = 0;
    bool ordered = true;
    std::string trace;
    for (const auto& r : rows) {
        const auto& b = r.ber_per_iteration;
        if (b[0] < 1e-4 || b[0] > 1e-1) continue;
        ++mid_points;
        ordered = ordered && b[2] <= b[1] && b[1] <= b[0];
        trace += fmt(" %.1f:[%.2e,%.2e,%.2e]", r.power_dbm, b[0], b[1], b[2]);
    }
    return {ordered && mid_points >= 2, fmt("mid_waterfall_points=%.0f blocks=200", mid_points) + trace};
}

Outcome c8_active_beats_passive()
{
    const LinkSimulator sim(scenario_preset("scenario2"));
    const auto g = grid(-4.0, 2.0, 8.0);
    int compared = 0, violations = 0;
    std::string trace;
    for (auto [passive, active] : {std::pair{Scheme::kIddPRis, Scheme::kIddARis},
                                   std::pair{Scheme::kLmmsePRis, Scheme::kLmmseARis}}) {
        const auto p = sweep(sim, passive, 3, CsiMode::kPerfect, g, 100, 0, 40);
        const auto a = sweep(sim, active, 3, CsiMode::kPerfect, g, 100, 0, 40);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i].ber <= 1e-2) continue;
            ++compared;
            if (!(a[i].ber < p[i].ber)) ++violations;
        }
        trace += std::string(" ") + std::string(to_string(passive)) + ":" + curve(p) + " " +
                 std::string(to_string(active)) + ":" + curve(a);
    }
    return {compared > 0 && violations == 0, fmt("compared=%.0f violations=%.0f", compared, violations) + trace};
}

Outcome c9_sum_rate()
{
    const LinkSimulator sim(scenario_preset("scenario1"));
    SweepSpec spec;
    spec.power_grid_dbm = grid(-10.0, 2.5, 20.0);
    spec.measure = Measure::kSumRate;
    spec.max_blocks = 100;
    spec.seed = 9;
    spec.scheme = Scheme::kLmmseWoRis;
    const auto wo = run_sweep(sim, spec);
    spec.scheme = Scheme::kLmmsePRis;
    const auto pr = run_sweep(sim, spec);
    int violations = 0;
    double min_gap = 1e9;
    for (std::size_t i = 0; i < wo.size(); ++i) {
        min_gap = std::min(min_gap, pr[i].sum_rate - wo[i].sum_rate);
        if (!(pr[i].sum_rate > wo[i].sum_rate)) ++violations;
    }
    return {violations == 0, fmt("points=%.0f violations=%.0f min_gap=%.3f bit/s/Hz", static_cast<double>(wo.size()),
                                 violations, min_gap)};
}

Outcome c10_ldpc()
{
    const auto fixed = run_validation("ldpc", 10).front();
    const auto awgn = check_ldpc_awgn(4000, 3.0, 10);
    return {fixed.pass && awgn.pass, fixed.name + " " + fixed.detail + (fixed.pass ? " ok; " : " FAILED; ") +
                                         awgn.detail + " (need < 1e-4)"};
}

Outcome c11_csi()
{
    const LinkSimulator sim(scenario_preset("scenario1"));
    const auto g = grid(1.5, 0.5, 6.0);
    const auto perfect = sweep(sim, Scheme::kIddPRis, 3, CsiMode::kPerfect, g, 100, 0, 300);
    const auto estimated = sweep(sim, Scheme::kIddPRis, 3, CsiMode::kEstimated, g, 100, 0, 300);
    double worst = 0.0;
    bool all_found = true;
    std::string trace;
    for (double target : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
        const double a = crossing_power(perfect, target);
        const double b = crossing_power(estimated, target);
        if (!std::isfinite(a) || !std::isfinite(b)) {
            all_found = false;
            continue;
        }
        worst = std::max(worst, std::abs(b - a));
        trace += fmt(" %.0e:%.2fdB", target, b - a);
    }
    return {all_found && worst <= 1.0, fmt("max_shift=%.2fdB (need <= 1)", worst) + trace};
}

Outcome c12_reproducible()
{
    SystemConfig cfg = scenario_preset("scenario1");
    cfg.users = 4;
    cfg.ap_antennas = 8;
    cfg.ris_elements = 16;
    const LinkSimulator sim(cfg);
    SweepSpec spec;
    spec.power_grid_dbm = {-4.0, 0.0, 4.0};
    spec.scheme = Scheme::kIddPRis;
    spec.csi = CsiMode::kEstimated;
    spec.min_errors = 50;
    spec.max_blocks = 40;
    spec.batch_size = 6;
    spec.seed = 12;
    const CsvMetadata meta{config_hash(cfg), spec.seed, "acceptance"};
    std::ostringstream serial, parallel, again;
    spec.threads = 1;
    write_csv(serial, run_sweep(sim, spec), meta);
    write_csv(again, run_sweep(sim, spec), meta);
    spec.threads = 4;
    write_csv(parallel, run_sweep(sim, spec), meta);
    const bool same = serial.str() == parallel.str() && serial.str() == again.str();
    return {same, fmt("csv_bytes=%.0f serial_vs_parallel=", static_cast<double>(serial.str().size())) +
                      (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"closed_form_equivalence", c1_equivalence},
        {"closed_form_stationarity", c2_stationarity},
        {"passive_truncation_grid", c3_passive_grid},
        {"active_truncation_equality", c4_active},
        {"complexity_anchor", c5_complexity},
        {"idd_passive_ris_gain", c6_idd_gain},
        {"idd_iteration_ordering", c7_iteration_order},
        {"active_beats_passive", c8_active_beats_passive},
        {"sum_rate_ris_gain", c9_sum_rate},
        {"ldpc_sanity", c10_ldpc},
        {"csi_robustness", c11_csi},
        {"reproducibility", c12_reproducible},
    };
    const std::string only = argc > 1 ? argv[1] : "";
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& [name, run] = criteria[i];
        if (!only.empty() && only != name && only != std::to_string(i + 1)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << name << ": " << o.detail
                  << fmt(" (%.1fs)", seconds_since(t0)) << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
