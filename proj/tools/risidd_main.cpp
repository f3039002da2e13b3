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


#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "risidd/channel.hpp"
#include "risidd/complexity.hpp"
#include "risidd/config.hpp"
#include "risidd/harness.hpp"
#include "risidd/ldpc.hpp"
#include "risidd/ris_optimizer.hpp"
#include "risidd/rng.hpp"
#include "risidd/validation.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct ScenarioOptions {
    std::string config_path;
    std::string preset;
    std::uint64_t seed = 1;
    bool seed_set = false;
};

void add_scenario_options(CLI::App* cmd, ScenarioOptions& opts)
{
    cmd->add_option("--config", opts.config_path, "Configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--preset", opts.preset, "Scenario preset (scenario1, scenario2)");
    cmd->add_option("--seed", opts.seed, "Master RNG seed")->each([&](const std::string&) { opts.seed_set = true; });
}

risidd::SystemConfig load_scenario(const ScenarioOptions& opts)
{
    risidd::SystemConfig cfg = opts.preset.empty() ? risidd::SystemConfig{} : risidd::scenario_preset(opts.preset);
    if (!opts.config_path.empty()) cfg = risidd::load_config(opts.config_path, cfg);
    if (opts.seed_set) cfg.rng_seed = opts.seed;
    cfg.validate();
    return cfg;
}

struct SweepOptions {
    ScenarioOptions scenario;
    std::string scheme = "IDD-P-RIS";
    int tau = 0;
    std::string csi = "perfect";
    std::string powers = "0:2:20";
    std::string out;
    std::uint64_t min_errors = 100;
    std::uint64_t min_blocks = 0;
    std::uint64_t max_blocks = 2000;
    int batch = 8;
    int threads = 1;
};

void add_sweep_options(CLI::App* cmd, SweepOptions& opts)
{
    add_scenario_options(cmd, opts.scenario);
    cmd->add_option("--scheme", opts.scheme, "LMMSE-{WO,P,A}-RIS or IDD-{WO,P,A}-RIS[-tau]");
    cmd->add_option("--tau", opts.tau, "IDD iterations (defaults to the config value)");
    cmd->add_option("--csi", opts.csi, "perfect or estimated")->check(CLI::IsMember({"perfect", "estimated"}));
    cmd->add_option("--powers", opts.powers, "P_T/K grid in dBm: start:step:stop or a comma list");
    cmd->add_option("--out", opts.out, "Output CSV (stdout when omitted)");
    cmd->add_option("--min-errors", opts.min_errors, "Stop a point after this many bit errors");
    cmd->add_option("--min-blocks", opts.min_blocks, "Minimum blocks per point");
    cmd->add_option("--max-blocks", opts.max_blocks, "Maximum blocks per point");
    cmd->add_option("--batch", opts.batch, "Blocks per batch between stop-rule checks")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
}

int run_sweep_command(const SweepOptions& opts, risidd::Measure measure)
{
    const auto cfg = load_scenario(opts.scenario);
    risidd::SweepSpec spec;
    int tau_from_name = 0;
    spec.scheme = risidd::parse_scheme(opts.scheme, &tau_from_name);
    spec.tau = opts.tau > 0 ? opts.tau : (tau_from_name > 0 ? tau_from_name : cfg.idd_iterations);
    spec.csi = risidd::parse_csi_mode(opts.csi);
    spec.measure = measure;
    spec.power_grid_dbm = risidd::parse_power_grid(opts.powers);
    spec.min_errors = opts.min_errors;
    spec.min_blocks = opts.min_blocks;
    spec.max_blocks = opts.max_blocks;
    spec.batch_size = opts.batch;
    spec.threads = opts.threads;
    spec.seed = cfg.rng_seed;

    const risidd::LinkSimulator sim(cfg);
    const auto rows = risidd::run_sweep(sim, spec);
    const risidd::CsvMetadata meta{risidd::config_hash(cfg), spec.seed, kVersion};
    if (opts.out.empty()) {
        risidd::write_csv(std::cout, rows, meta);
    } else {
        std::ofstream file(opts.out);
        if (!file) throw std::runtime_error("cannot open " + opts.out);
        risidd::write_csv(file, rows, meta);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"risidd: RIS-assisted iterative detection and decoding simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SweepOptions ber_opts;
    auto* ber = app.add_subcommand("ber", "Monte Carlo BER sweep over P_T/K");
    add_sweep_options(ber, ber_opts);

    SweepOptions rate_opts;
    auto* sumrate = app.add_subcommand("sumrate", "Average sum rate over P_T/K");
    add_sweep_options(sumrate, rate_opts);
    rate_opts.max_blocks = 200;

    risidd::ComplexityParams cplx;
    auto* complexity = app.add_subcommand("complexity", "Leading-order flop counts (CSV)");
    complexity->add_option("--users,-K", cplx.users);
    complexity->add_option("--antennas,-M", cplx.antennas);
    complexity->add_option("--elements,-N", cplx.elements);
    complexity->add_option("--iterations,-I", cplx.iterations);
    complexity->add_option("--cvx-iterations", cplx.cvx_iterations);
    complexity->add_option("--epsilon", cplx.epsilon);

    std::string suite = "all";
    std::uint64_t validate_seed = 2024;
    auto* validate = app.add_subcommand("validate", "Run the oracle validation suites");
    std::vector<std::string> suites = risidd::validation_suites();
    suites.push_back("all");
    validate->add_option("suite", suite, "Suite name")->check(CLI::IsMember(suites));
    validate->add_option("--seed", validate_seed);

    ScenarioOptions dump_opts;
    std::string dump_out;
    std::uint64_t dump_block = 0;
    auto* dump = app.add_subcommand("channel-dump", "Write one channel realization (H, G, F, g_loss)");
    add_scenario_options(dump, dump_opts);
    dump->add_option("--block", dump_block, "Block index");
    dump->add_option("--out", dump_out, "Output file")->required();

    ScenarioOptions alist_opts;
    std::string alist_out;
    auto* alist = app.add_subcommand("alist", "Export the parity-check matrix in alist format");
    add_scenario_options(alist, alist_opts);
    alist->add_option("--out", alist_out, "Output file (stdout when omitted)");

    ScenarioOptions trace_opts;
    std::uint64_t trace_block = 0;
    auto* trace = app.add_subcommand("ao-trace", "Alternating-optimization trace for one block (CSV)");
    add_scenario_options(trace, trace_opts);
    trace->add_option("--block", trace_block, "Block index");

    ScenarioOptions show_opts;
    auto* show = app.add_subcommand("config", "Print the effective configuration");
    add_scenario_options(show, show_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ber) return run_sweep_command(ber_opts, risidd::Measure::kBer);
        if (*sumrate) return run_sweep_command(rate_opts, risidd::Measure::kSumRate);
        if (*complexity) {
            risidd::write_complexity_table(std::cout, cplx);
            return 0;
        }
        if (*validate) {
            const auto results = risidd::run_validation(suite, validate_seed);
            risidd::print_report(std::cout, results);
            return risidd::all_passed(results) ? 0 : 1;
        }
        if (*dump || *trace) {
            const auto cfg = load_scenario(*dump ? dump_opts : trace_opts);
            const std::uint64_t block = *dump ? dump_block : trace_block;
            auto geo_rng = risidd::seeded_rng(cfg.rng_seed, risidd::block_stream(block, risidd::StreamPurpose::kGeometry));
            const auto geom = risidd::draw_geometry(cfg, geo_rng);
            auto fading_rng =
                risidd::seeded_rng(cfg.rng_seed, risidd::block_stream(block, risidd::StreamPurpose::kSmallScale));
            const auto fading = risidd::draw_small_scale(cfg.ap_antennas, cfg.ris_elements, cfg.users, fading_rng);
            const auto channels = risidd::apply_large_scale(fading, geom, cfg);
            if (*dump) {
                risidd::write_channel_dump(dump_out, channels);
                return 0;
            }
            auto ao_rng = risidd::seeded_rng(cfg.rng_seed, risidd::block_stream(block, risidd::StreamPurpose::kAoInit));
            const auto params = risidd::design_params(cfg, risidd::derive_powers(cfg));
            const auto result = risidd::alternating_optimize(risidd::design_inputs(channels), params, ao_rng);
            risidd::write_ao_trace(std::cout, result);
            return 0;
        }
        if (*alist) {
            const auto cfg = load_scenario(alist_opts);
            const auto code = risidd::build_code(cfg.code_n, cfg.code_rate, cfg.code_col_degree, cfg.code_seed);
            if (alist_out.empty()) {
                risidd::write_alist(std::cout, code);
            } else {
                std::ofstream file(alist_out);
                if (!file) throw std::runtime_error("cannot open " + alist_out);
                risidd::write_alist(file, code);
            }
            return 0;
        }
        if (*show) {
            risidd::write_config(std::cout, load_scenario(show_opts));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "risidd: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
