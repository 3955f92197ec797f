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

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "jamcell/experiment.hpp"

namespace jamcell {

namespace {

namespace fs = std::filesystem;

// Fixed-format number rendering so reruns are byte-identical.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string seed_list(const std::vector<uint64_t>& seeds) {
    std::string s;
    for (size_t i = 0; i < seeds.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(seeds[i]);
    }
    return s;
}

std::ofstream open_csv(const fs::path& path, const std::string& hash,
                       const std::string& seeds, const std::string& header) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "# config_hash=" << hash << "\n# seeds=" << seeds << "\n"
        << header << "\n";
    return out;
}

// Run fn(i) for i in [0, n) on up to `parallel` threads.
void fan_out(int n, int parallel, const std::function<void(int)>& fn) {
    if (parallel <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min(parallel, n);
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

void run_ssb_attack_experiment(const ExperimentConfig& cfg, const fs::path& out,
                               int parallel) {
    const int n = static_cast<int>(cfg.seeds.size());
    std::vector<LinkResult> results(n);
    fan_out(n, parallel, [&](int i) {
        LinkScenario sc = cfg.link;
        sc.seed = cfg.seeds[i];
        results[i] = run_ssb_attack(sc, /*collect_dumps=*/true);
    });

    auto summary = open_csv(out / "evm_summary.csv", cfg.config_hash,
                            seed_list(cfg.seeds),
                            "seed,pss_detected,n_id_2,timing_offset,peak_metric,"
                            "pci_detected,pci_ok,mean_pbch_evm_pct,mean_pss_evm_pct,"
                            "pdsch_evm_pct,mib_decodable");
    for (int i = 0; i < n; ++i) {
        const auto& r = results[i];
        summary << cfg.seeds[i] << ',' << (r.pss.detected ? 1 : 0) << ','
                << r.pss.n_id_2 << ',' << r.pss.timing_offset << ','
                << num(r.pss.peak_metric) << ','
                << (r.pci_detected ? std::to_string(*r.pci_detected) : "-1") << ','
                << (r.pci_ok ? 1 : 0) << ',' << num(r.mean_pbch_evm) << ','
                << num(r.mean_pss_evm) << ',' << num(r.pdsch_evm_rms) << ','
                << (r.mib_decodable ? 1 : 0) << "\n";
    }

    for (int i = 0; i < n; ++i) {
        const auto& r = results[i];
        const std::string tag = "_seed" + std::to_string(cfg.seeds[i]) + ".csv";

        auto bursts = open_csv(out / ("sjnr_per_burst" + tag), cfg.config_hash,
                               std::to_string(cfg.seeds[i]),
                               "burst,ssb_index,sjnr_db,pbch_evm_pct,pss_evm_pct,"
                               "mib_decodable");
        for (size_t b = 0; b < r.bursts.size(); ++b) {
            const auto& m = r.bursts[b];
            bursts << b << ',' << m.ssb_index << ',' << num(m.dmrs_sjnr_db) << ','
                   << num(m.pbch_evm_rms) << ',' << num(m.pss_evm_rms) << ','
                   << (m.mib_decodable ? 1 : 0) << "\n";
        }

        auto corr = open_csv(out / ("pss_correlation" + tag), cfg.config_hash,
                               std::to_string(cfg.seeds[i]),
                             "lag,magnitude");
        for (size_t lag = 0; lag < r.pss_correlation.size(); ++lag)
            corr << lag << ',' << num(r.pss_correlation[lag]) << "\n";

        auto sss = open_csv(out / ("sss_scores" + tag), cfg.config_hash,
                               std::to_string(cfg.seeds[i]),
                            "candidate,score");
        for (size_t c = 0; c < r.sss_scores.size(); ++c)
            sss << c << ',' << num(r.sss_scores[c]) << "\n";

        auto pbch = open_csv(out / ("constellation_pbch" + tag), cfg.config_hash,
                               std::to_string(cfg.seeds[i]),
                             "re,im");
        for (const auto& s : r.pbch_constellation)
            pbch << num(s.real()) << ',' << num(s.imag()) << "\n";

        auto pdsch = open_csv(out / ("constellation_pdsch" + tag), cfg.config_hash,
                               std::to_string(cfg.seeds[i]),
                              "re,im");
        for (const auto& s : r.pdsch_constellation)
            pdsch << num(s.real()) << ',' << num(s.imag()) << "\n";
    }
}

void run_cell_sweep_experiment(const ExperimentConfig& cfg, const fs::path& out,
                               int parallel) {
    struct Job {
        double value;
        uint64_t seed;
        bool modified;  // false: run the base scenario untouched
    };
    std::vector<Job> jobs;
    if (cfg.sweep_values.empty()) {
        for (uint64_t s : cfg.seeds) jobs.push_back({0.0, s, false});
    } else {
        for (double v : cfg.sweep_values)
            for (uint64_t s : cfg.seeds) jobs.push_back({v, s, true});
    }

    std::vector<SweepRow> rows(jobs.size());
    fan_out(static_cast<int>(jobs.size()), parallel, [&](int i) {
        const auto& job = jobs[i];
        if (job.modified) {
            Scenario sc = cfg.cell;
            auto r = sweep(sc, cfg.sweep_axis, {job.value}, {job.seed});
            rows[i] = r.front();
        } else {
            Scenario sc = cfg.cell;
            sc.seed = job.seed;
            const auto m = run_cell(sc);
            rows[i] = {job.value,      job.seed,         m.throughput_bps,
                       m.goodput_bps,  m.mean_sinr_db,   m.retx_fraction};
        }
    });

    auto csv = open_csv(out / "sweep.csv", cfg.config_hash,
                        seed_list(cfg.seeds),
                        "axis_value,seed,throughput_bps,goodput_bps,"
                        "mean_sinr_db,retx_fraction");
    for (const auto& r : rows)
        csv << num(r.axis_value) << ',' << r.seed << ',' << num(r.throughput_bps)
            << ',' << num(r.goodput_bps) << ',' << num(r.mean_sinr_db) << ','
            << num(r.retx_fraction) << "\n";
}

void run_mobility_trace_experiment(const ExperimentConfig& cfg,
                                   const fs::path& out, int parallel) {
    const int n = static_cast<int>(cfg.seeds.size());
    std::vector<MobilityTrace> traces(n);
    fan_out(n, parallel, [&](int i) {
        traces[i] = generate_trace(cfg.mobility, cfg.trace_nodes,
                                   cfg.trace_duration_s, cfg.seeds[i]);
    });
    for (int i = 0; i < n; ++i) {
        const auto& tr = traces[i];
        auto csv = open_csv(
            out / ("trace_seed" + std::to_string(cfg.seeds[i]) + ".csv"),
            cfg.config_hash, std::to_string(cfg.seeds[i]),
            "epoch,node_id,x_m,y_m");
        for (int e = 0; e < tr.n_epochs; ++e)
            for (int node = 0; node < tr.n_nodes; ++node)
                csv << e << ',' << node << ',' << num(tr.positions[node][e][0])
                    << ',' << num(tr.positions[node][e][1]) << "\n";
    }
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                   int parallel) {
    const fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
        std::cerr << "error: cannot create '" << out_dir << "': " << ec.message()
                  << "\n";
        return 1;
    }
    try {
        switch (cfg.kind) {
            case ExperimentKind::SSB_ATTACK:
                run_ssb_attack_experiment(cfg, out, parallel);
                break;
            case ExperimentKind::CELL_SWEEP:
                run_cell_sweep_experiment(cfg, out, parallel);
                break;
            case ExperimentKind::MOBILITY_TRACE:
                run_mobility_trace_experiment(cfg, out, parallel);
                break;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace jamcell
