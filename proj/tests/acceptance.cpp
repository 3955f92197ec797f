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
//
// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "jamcell/experiment.hpp"

using namespace jamcell;
namespace fs = std::filesystem;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// ---------------------------------------------------------------- criterion 1
// Exhaustive PCI round trip: noiseless single link, every identity must come
// back exactly (PCI and burst timing). Budget: 2 minutes.
bool pci_round_trip(std::string& detail) {
    const double t0 = now_s();
    LinkScenario sc;
    sc.thermal_noise = false;
    sc.n_slots = 1;
    int ok = 0;
    for (int pci = 0; pci < 1008; ++pci) {
        sc.pci = pci;
        sc.seed = 1 + pci;
        if (run_ssb_attack(sc).pci_ok) ++ok;
    }
    const double dt = now_s() - t0;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d/1008 exact in %.1f s", ok, dt);
    detail = buf;
    return ok == 1008 && dt <= 120.0;
}

// ---------------------------------------------------------------- criterion 2
// FSPL versus the engineering closed form on a 100-point grid, 0.05 dB.
bool fspl_grid(std::string& detail) {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double f = 0.6e9 + i * 3.0e9;
            const double d = 5.0 + j * 120.0;
            const double oracle = 32.45 + 20.0 * std::log10(f / 1e6) +
                                  20.0 * std::log10(d / 1e3);
            worst = std::max(worst, std::abs(fspl_db(f, d) - oracle));
        }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max deviation %.4f dB", worst);
    detail = buf;
    return worst < 0.05;
}

// ---------------------------------------------------------------- criterion 3
// The minimum-jam-power relation must invert the SJNR relation exactly.
bool jam_power_inverse(std::string& detail) {
    Rng rng(3);
    double worst = 0.0;
    int tested = 0;
    while (tested < 1000) {
        const double p = db_to_lin(rng.uniform(-120.0, -40.0));
        const double n = db_to_lin(rng.uniform(-140.0, -100.0));
        const double gamma = db_to_lin(rng.uniform(-10.0, 20.0));
        const double pj = min_jam_re_power(p, gamma, n);
        if (pj <= 0.0) continue;  // clamped, no inverse
        ++tested;
        worst = std::max(worst, std::abs(sjnr(p, pj, n) - gamma) / gamma);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max relative error %.2e", worst);
    detail = buf;
    return worst <= 1e-12;
}

// ---------------------------------------------------------------- criterion 4
// Denial-power advantage of the SSB-targeting jammer over the barrage jammer.
double detection_rate(const LinkScenario& base, JammerKind kind,
                      double total_power_dbm, int trials) {
    LinkScenario sc = base;
    JammerSpec jam;
    jam.kind = kind;
    jam.position_m = {100.0, 100.0};
    jam.tx_power_dbm = total_power_dbm;
    sc.jammers = {jam};
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        sc.seed = 10000 + t;
        if (run_ssb_attack(sc, false, true).pss.detected) ++hits;
    }
    return static_cast<double>(hits) / trials;
}

double denial_power_dbm(const LinkScenario& base, JammerKind kind) {
    double lo = 10.0, hi = 70.0;  // transmit power bracket at the jammer
    if (detection_rate(base, kind, lo, 30) < 0.5) return lo;
    if (detection_rate(base, kind, hi, 30) >= 0.5) return hi;
    for (int it = 0; it < 12; ++it) {
        const double mid = (lo + hi) / 2.0;
        if (detection_rate(base, kind, mid, 30) < 0.5)
            hi = mid;
        else
            lo = mid;
    }
    // confirm (and nudge upward if needed) at the required 100-trial rate
    double p = hi;
    while (detection_rate(base, kind, p, 100) >= 0.5 && p < 80.0) p += 0.25;
    return p;
}

bool smart_power_advantage(std::string& detail) {
    const double t0 = now_s();
    LinkScenario sc;
    sc.n_slots = 2;
    const double p_barrage = denial_power_dbm(sc, JammerKind::BARRAGE);
    const double p_smart = denial_power_dbm(sc, JammerKind::SMART_SSB);
    const double gap = p_barrage - p_smart;
    const double dt = now_s() - t0;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "barrage %.2f dBm, smart %.2f dBm, gap %.2f dB in %.1f s",
                  p_barrage, p_smart, gap, dt);
    detail = buf;
    return gap >= 2.0 && gap <= 5.0 && dt <= 600.0;
}

// ---------------------------------------------------------------- criterion 5
// Under equal per-RE jamming power (barrage) and multipath fading, the
// scalar-equalized wideband PDSCH is more fragile than the locally equalized
// PSS symbols.
bool evm_ordering(std::string& detail) {
    LinkScenario sc;
    sc.n_slots = 2;
    sc.fading = true;
    JammerSpec jam;
    jam.kind = JammerKind::BARRAGE;
    jam.position_m = {100.0, 100.0};
    jam.tx_power_dbm = 24.0;
    sc.jammers = {jam};

    double pdsch = 0.0, pss = 0.0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        sc.seed = 100 + s;
        const auto res = run_ssb_attack(sc);
        pdsch += res.pdsch_evm_rms;
        pss += res.mean_pss_evm;
    }
    pdsch /= seeds;
    pss /= seeds;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "mean PDSCH EVM %.1f%% vs PSS EVM %.1f%%",
                  pdsch, pss);
    detail = buf;
    return pdsch > pss;
}

// ---------------------------------------------------------------- criterion 6
// A +9 dB boosted burst under SSB-targeted jamming recovers at least 40% of
// its PBCH EVM relative to the unboosted bursts.
bool beam_boost_mitigation(std::string& detail) {
    LinkScenario sc;
    sc.n_slots = 2;
    sc.boost_index = 1;
    sc.boost_db = 9.0;
    JammerSpec jam;
    jam.kind = JammerKind::SMART_SSB;
    jam.position_m = {100.0, 100.0};
    jam.tx_power_dbm = 26.0;
    sc.jammers = {jam};

    double boosted = 0.0, others = 0.0;
    int n_boosted = 0, n_others = 0;
    for (int s = 0; s < 50; ++s) {
        sc.seed = 300 + s;
        const auto res = run_ssb_attack(sc);
        for (const auto& b : res.bursts) {
            if (b.ssb_index == sc.boost_index) {
                boosted += b.pbch_evm_rms;
                ++n_boosted;
            } else {
                others += b.pbch_evm_rms;
                ++n_others;
            }
        }
    }
    boosted /= n_boosted;
    others /= n_others;
    const double reduction = (others - boosted) / others;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "boosted EVM %.1f%% vs others %.1f%% (%.0f%% reduction)",
                  boosted, others, 100.0 * reduction);
    detail = buf;
    return reduction >= 0.40;
}

// ---------------------------------------------------------------- criterion 7
// HARQ saturation: past the retransmission knee, throughput plateaus while
// goodput keeps collapsing. Budget: 5 minutes at desk scale.
bool harq_saturation(std::string& detail) {
    const double t0 = now_s();
    Scenario base;
    base.n_ue = 20;
    base.duration_frames = 200;
    base.fading = false;  // isolate the HARQ knee from fading dips
    JammerSpec jam;
    jam.kind = JammerKind::BARRAGE;
    // A near-center jammer keeps the jam-to-signal ratio nearly uniform across
    // the cell, so every UE hits the lowest-rate floor together and throughput
    // plateaus cleanly once retransmissions dominate.
    jam.position_m = {20.0, 0.0};
    base.jammers = {jam};
    const std::vector<uint64_t> seeds{1, 2, 3};

    auto measure = [&](double power_dbm) {
        const auto rows = sweep(base, SweepAxis::JAM_POWER, {power_dbm}, seeds);
        double tput = 0.0, gput = 0.0, retx = 0.0;
        for (const auto& r : rows) {
            tput += r.throughput_bps;
            gput += r.goodput_bps;
            retx += r.retx_fraction;
        }
        const double n = static_cast<double>(rows.size());
        return std::array<double, 3>{tput / n, gput / n, retx / n};
    };

    double p_star = -1.0;
    for (double p = 10.0; p <= 60.0; p += 2.0) {
        if (measure(p)[2] >= 0.3) {
            p_star = p;
            break;
        }
    }
    if (p_star < 0.0) {
        detail = "no retransmission knee found";
        return false;
    }
    const auto at_knee = measure(p_star);
    const auto past = measure(p_star + 10.0);
    const double tput_ratio = past[0] / at_knee[0];
    const double gput_ratio = past[1] / at_knee[1];
    const double dt = now_s() - t0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "P*=%.0f dBm, throughput ratio %.3f, goodput ratio %.3f "
                  "in %.1f s",
                  p_star, tput_ratio, gput_ratio, dt);
    detail = buf;
    return tput_ratio >= 0.9 && tput_ratio <= 1.1 && gput_ratio <= 0.9 &&
           dt <= 300.0;
}

// ---------------------------------------------------------------- criterion 8
// Each additional jammer on the 224 m circle buys less throughput loss.
bool diminishing_returns(std::string& detail) {
    Scenario base;
    base.duration_frames = 100;
    JammerSpec jam;
    jam.kind = JammerKind::BARRAGE;
    jam.tx_power_dbm = 20.0;
    jam.position_m = {224.0, 0.0};
    base.jammers = {jam};
    const std::vector<uint64_t> seeds{1, 2, 3, 4, 5};

    std::vector<double> tput;
    for (double n : {0.0, 1.0, 2.0, 3.0}) {
        const auto rows = sweep(base, SweepAxis::N_JAMMERS, {n}, seeds);
        double sum = 0.0;
        for (const auto& r : rows) sum += r.throughput_bps;
        tput.push_back(sum / rows.size());
    }
    const double d1 = tput[0] - tput[1];
    const double d2 = tput[1] - tput[2];
    const double d3 = tput[2] - tput[3];
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "marginal losses %.2f / %.2f / %.2f Mbps", d1 / 1e6, d2 / 1e6,
                  d3 / 1e6);
    detail = buf;
    return d1 > d2 && d2 > d3 && d3 >= 0.0;
}

// ---------------------------------------------------------------- criterion 9
// STEPS transition statistics against the closed-form pmfs. The preferred
// zone sits at a corner of a (d_max+1)-sized grid so no ring is clipped.
bool steps_fit(std::string& detail) {
    double worst = 0.0;
    for (auto [alpha, tau] : {std::pair{1.0, 1.5}, std::pair{2.0, 2.0}}) {
        StepsConfig cfg;
        cfg.grid_size = 11;
        cfg.alpha = alpha;
        cfg.tau = tau;
        Rng rng(static_cast<uint64_t>(alpha * 10 + tau));
        StepsState state = steps_init({0, 0}, cfg, rng);

        const int n = 100000;
        std::vector<double> dist_hist(cfg.grid_size, 0.0);
        std::vector<double> stay_hist(cfg.t_max, 0.0);
        for (int i = 0; i < n; ++i) {
            state.stay_remaining = 0;
            state = steps_step(state, cfg, rng);
            dist_hist[zone_distance(state.current_zone, state.preferred_zone)] += 1.0;
            stay_hist[state.stay_remaining - 1] += 1.0;
        }
        const auto dist_pmf = zone_distance_pmf(alpha, cfg.grid_size - 1);
        const auto stay_pmf = stay_time_pmf(tau, cfg.t_max);
        double tv_d = 0.0, tv_t = 0.0;
        for (size_t i = 0; i < dist_pmf.size(); ++i)
            tv_d += std::abs(dist_hist[i] / n - dist_pmf[i]);
        for (size_t i = 0; i < stay_pmf.size(); ++i)
            tv_t += std::abs(stay_hist[i] / n - stay_pmf[i]);
        worst = std::max({worst, tv_d / 2.0, tv_t / 2.0});
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst total variation %.4f", worst);
    detail = buf;
    return worst <= 0.02;
}

// --------------------------------------------------------------- criterion 10
// DM-RS SJNR estimator calibration against injected per-RE SJNR.
bool sjnr_calibration(std::string& detail) {
    const auto pci = CellIdentity::from_pci(350);
    Rng rng(10);
    double worst = 0.0;
    for (double injected : {0.0, 5.0, 10.0, 15.0, 20.0, 25.0}) {
        const double sigma = std::sqrt(db_to_lin(-injected));
        double sum = 0.0;
        const int bursts = 100;
        for (int b = 0; b < bursts; ++b) {
            const int idx = b % kSsbBursts;
            const auto block = assemble_ssb(pci, idx, 0xA5C3F0);
            SsbGrid grid;
            for (int l = 0; l < kSsbSymbols; ++l)
                for (int k = 0; k < kSsbSubcarriers; ++k)
                    grid.at(k, l) = block.at(k, l) + sigma * rng.cnormal();
            sum += estimate_dmrs_sjnr(grid, pci, idx);
        }
        worst = std::max(worst, std::abs(sum / bursts - injected));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst mean error %.3f dB", worst);
    detail = buf;
    return worst <= 1.5;
}

// --------------------------------------------------------------- criterion 11
// Byte-identical reruns for each experiment kind.
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(a))
        names.push_back(e.path().filename().string());
    if (names.empty()) return false;
    for (const auto& name : names) {
        if (!fs::exists(b / name)) return false;
        if (slurp(a / name) != slurp(b / name)) return false;
    }
    return true;
}

bool determinism(std::string& detail) {
    const fs::path root = fs::temp_directory_path() / "jamcell_acceptance";
    fs::remove_all(root);

    const char* configs[] = {
        R"({"experiment": "ssb_attack", "seeds": [1, 2],
            "link": {"n_slots": 2,
                     "jammers": [{"kind": "smart_ssb", "power_dbm": 20,
                                  "x_m": 100, "y_m": 100}]}})",
        R"({"experiment": "cell_sweep", "seeds": [1, 2],
            "cell": {"duration_frames": 10,
                     "jammers": [{"kind": "barrage", "power_dbm": 20,
                                  "x_m": 224, "y_m": 0}]},
            "sweep": {"axis": "jam_power", "values": [10, 30]}})",
        R"({"experiment": "mobility_trace", "seeds": [3],
            "mobility": {"n_nodes": 5, "duration_s": 1.0}})",
    };
    int identical = 0;
    for (int i = 0; i < 3; ++i) {
        const auto cfg = parse_config(configs[i]);
        const fs::path a = root / ("a" + std::to_string(i));
        const fs::path b = root / ("b" + std::to_string(i));
        if (run_experiment(cfg, a.string()) != 0) continue;
        if (run_experiment(cfg, b.string(), 2) != 0) continue;
        if (dirs_identical(a, b)) ++identical;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d/3 experiment kinds byte-identical",
                  identical);
    detail = buf;
    return identical == 3;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Criterion> criteria{
        {"1 PCI exhaustive round trip", pci_round_trip},
        {"2 FSPL closed-form grid", fspl_grid},
        {"3 jam-power/SJNR inverse identity", jam_power_inverse},
        {"4 smart-vs-barrage denial power gap", smart_power_advantage},
        {"5 PDSCH-vs-PSS EVM ordering", evm_ordering},
        {"6 beam-boost PBCH mitigation", beam_boost_mitigation},
        {"7 HARQ throughput saturation", harq_saturation},
        {"8 multi-jammer diminishing returns", diminishing_returns},
        {"9 STEPS distribution fit", steps_fit},
        {"10 SJNR estimator calibration", sjnr_calibration},
        {"11 rerun determinism", determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %s (%s)\n", ok ? "PASS" : "FAIL", c.name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
