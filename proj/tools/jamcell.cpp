// Copyright 2026 The jamcell authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jamcell/experiment.hpp"

namespace {

int log_level() {
    const char* env = std::getenv("JAMCELL_LOG");
    if (!env) return 1;
    try {
        return std::stoi(env);
    } catch (...) {
        return 1;
    }
}

std::vector<uint64_t> parse_seeds(const std::string& csv) {
    std::vector<uint64_t> seeds;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) seeds.push_back(std::stoull(tok));
    if (seeds.empty()) throw std::runtime_error("--seeds: no seeds given");
    return seeds;
}

int run(jamcell::ExperimentKind kind, const std::string& config_path,
        const std::string& out_dir, const std::string& seeds_csv, int parallel) {
    auto cfg = jamcell::load_config(config_path);
    cfg.kind = kind;
    if (!seeds_csv.empty()) cfg.seeds = parse_seeds(seeds_csv);
    if (log_level() >= 1)
        std::cerr << "jamcell: " << cfg.seeds.size() << " seed(s), config hash "
                  << cfg.config_hash << ", writing to " << out_dir << "\n";
    return jamcell::run_experiment(cfg, out_dir, parallel);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"5G NR jamming experiment runner"};
    app.require_subcommand(1);

    std::string config_path, out_dir, seeds_csv;
    int parallel = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file")
            ->required();
        sub->add_option("--out", out_dir, "output directory for CSV artifacts")
            ->required();
        sub->add_option("--seeds", seeds_csv,
                        "comma-separated seed list (overrides the config)");
        sub->add_option("--parallel", parallel, "worker thread count")
            ->check(CLI::PositiveNumber);
    };
    auto* ssb = app.add_subcommand("ssb-attack",
                                   "single-link SSB denial experiment");
    auto* sweep = app.add_subcommand("cell-sweep",
                                     "system-level throughput sweep");
    auto* trace = app.add_subcommand("mobility-trace",
                                     "mobility model trace export");
    add_common(ssb);
    add_common(sweep);
    add_common(trace);

    CLI11_PARSE(app, argc, argv);

    jamcell::ExperimentKind kind = jamcell::ExperimentKind::SSB_ATTACK;
    if (sweep->parsed()) kind = jamcell::ExperimentKind::CELL_SWEEP;
    if (trace->parsed()) kind = jamcell::ExperimentKind::MOBILITY_TRACE;

    try {
        return run(kind, config_path, out_dir, seeds_csv, parallel);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
