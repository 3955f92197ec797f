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

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "jamcell/experiment.hpp"
#include "json.hpp"

namespace jamcell {

namespace {

using nlohmann::json;

void check_known_keys(const json& obj, const std::string& section,
                      const std::set<std::string>& known) {
    for (const auto& [key, _] : obj.items())
        if (!known.contains(key))
            throw std::runtime_error("config: unknown field '" + section + key + "'");
}

double get_num(const json& obj, const std::string& key, double fallback) {
    return obj.contains(key) ? obj.at(key).get<double>() : fallback;
}

std::vector<JammerSpec> parse_jammers(const json& arr, const std::string& section) {
    std::vector<JammerSpec> jammers;
    for (size_t i = 0; i < arr.size(); ++i) {
        const auto& j = arr.at(i);
        check_known_keys(j, section + "jammers[" + std::to_string(i) + "].",
                         {"kind", "power_dbm", "x_m", "y_m", "gain_db"});
        JammerSpec spec;
        const std::string kind = j.value("kind", "barrage");
        if (kind == "barrage") spec.kind = JammerKind::BARRAGE;
        else if (kind == "smart_ssb") spec.kind = JammerKind::SMART_SSB;
        else if (kind == "smart_pbch") spec.kind = JammerKind::SMART_PBCH;
        else throw std::runtime_error("config: invalid jammer kind '" + kind + "'");
        spec.tx_power_dbm = get_num(j, "power_dbm", spec.tx_power_dbm);
        if (spec.tx_power_dbm < 0.0)
            throw std::runtime_error("config: negative jammer power_dbm");
        spec.position_m = {get_num(j, "x_m", 0.0), get_num(j, "y_m", 0.0)};
        spec.gain_db = get_num(j, "gain_db", 0.0);
        jammers.push_back(spec);
    }
    return jammers;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    const std::string text = json_text.find_first_not_of(" \t\r\n") == std::string::npos
                                 ? "{}"
                                 : json_text;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config: parse error: ") + e.what());
    }

    check_known_keys(root, "",
                     {"experiment", "seeds", "link", "cell", "mobility", "sweep"});

    ExperimentConfig cfg;
    const std::string kind = root.value("experiment", "ssb_attack");
    if (kind == "ssb_attack") cfg.kind = ExperimentKind::SSB_ATTACK;
    else if (kind == "cell_sweep") cfg.kind = ExperimentKind::CELL_SWEEP;
    else if (kind == "mobility_trace") cfg.kind = ExperimentKind::MOBILITY_TRACE;
    else throw std::runtime_error("config: invalid experiment '" + kind + "'");

    if (root.contains("seeds")) {
        cfg.seeds.clear();
        for (const auto& s : root.at("seeds")) cfg.seeds.push_back(s.get<uint64_t>());
        if (cfg.seeds.empty()) throw std::runtime_error("config: seeds must be non-empty");
    }

    if (root.contains("link")) {
        const auto& link = root.at("link");
        check_known_keys(
            link, "link.",
            {"scs_khz", "n_rb", "pci", "mib_bits", "gnb_power_dbm", "carrier_ghz",
             "noise_figure_db", "gnb_pos_m", "ue_pos_m", "jammers", "boost_index",
             "boost_db", "fading", "delay_spread_ns", "n_slots", "pss_threshold",
             "evm_decode_threshold"});
        auto& sc = cfg.link;
        sc.scs_hz = get_num(link, "scs_khz", sc.scs_hz / 1e3) * 1e3;
        sc.n_rb = static_cast<int>(get_num(link, "n_rb", sc.n_rb));
        sc.pci = static_cast<int>(get_num(link, "pci", sc.pci));
        sc.mib_bits = static_cast<uint32_t>(get_num(link, "mib_bits", sc.mib_bits));
        sc.gnb_power_dbm = get_num(link, "gnb_power_dbm", sc.gnb_power_dbm);
        if (sc.gnb_power_dbm < 0.0)
            throw std::runtime_error("config: negative link.gnb_power_dbm");
        sc.carrier_hz = get_num(link, "carrier_ghz", sc.carrier_hz / 1e9) * 1e9;
        sc.noise_figure_db = get_num(link, "noise_figure_db", sc.noise_figure_db);
        if (link.contains("gnb_pos_m"))
            sc.gnb_pos_m = {link.at("gnb_pos_m").at(0).get<double>(),
                            link.at("gnb_pos_m").at(1).get<double>()};
        if (link.contains("ue_pos_m"))
            sc.ue_pos_m = {link.at("ue_pos_m").at(0).get<double>(),
                           link.at("ue_pos_m").at(1).get<double>()};
        if (link.contains("jammers"))
            sc.jammers = parse_jammers(link.at("jammers"), "link.");
        sc.boost_index = static_cast<int>(get_num(link, "boost_index", sc.boost_index));
        sc.boost_db = get_num(link, "boost_db", sc.boost_db);
        if (link.contains("fading")) sc.fading = link.at("fading").get<bool>();
        sc.delay_spread_ns = get_num(link, "delay_spread_ns", sc.delay_spread_ns);
        sc.n_slots = static_cast<int>(get_num(link, "n_slots", sc.n_slots));
        sc.pss_threshold = get_num(link, "pss_threshold", sc.pss_threshold);
        sc.evm_decode_threshold =
            get_num(link, "evm_decode_threshold", sc.evm_decode_threshold);
    }

    if (root.contains("cell")) {
        const auto& cell = root.at("cell");
        check_known_keys(cell, "cell.",
                         {"cell_radius_m", "gnb_power_dbm", "n_ue", "duration_frames",
                          "full_buffer", "app_rate_kbps", "rlc_sdu_bits",
                          "harq_max_attempts", "noise_figure_db", "fading", "jammers",
                          "scs_khz", "n_rb", "carrier_ghz"});
        auto& sc = cfg.cell;
        sc.cell_radius_m = get_num(cell, "cell_radius_m", sc.cell_radius_m);
        sc.gnb_power_dbm = get_num(cell, "gnb_power_dbm", sc.gnb_power_dbm);
        if (sc.gnb_power_dbm < 0.0)
            throw std::runtime_error("config: negative cell.gnb_power_dbm");
        sc.n_ue = static_cast<int>(get_num(cell, "n_ue", sc.n_ue));
        sc.duration_frames =
            static_cast<int>(get_num(cell, "duration_frames", sc.duration_frames));
        if (cell.contains("full_buffer")) sc.full_buffer = cell.at("full_buffer").get<bool>();
        sc.app_rate_bps = get_num(cell, "app_rate_kbps", sc.app_rate_bps / 1e3) * 1e3;
        sc.rlc_sdu_bits = get_num(cell, "rlc_sdu_bits", sc.rlc_sdu_bits);
        sc.harq_max_attempts =
            static_cast<int>(get_num(cell, "harq_max_attempts", sc.harq_max_attempts));
        sc.noise_figure_db = get_num(cell, "noise_figure_db", sc.noise_figure_db);
        if (cell.contains("fading")) sc.fading = cell.at("fading").get<bool>();
        if (cell.contains("jammers"))
            sc.jammers = parse_jammers(cell.at("jammers"), "cell.");
        sc.scs_hz = get_num(cell, "scs_khz", sc.scs_hz / 1e3) * 1e3;
        sc.n_rb = static_cast<int>(get_num(cell, "n_rb", sc.n_rb));
        sc.carrier_hz = get_num(cell, "carrier_ghz", sc.carrier_hz / 1e9) * 1e9;

        for (const auto& jam : sc.jammers) {
            const double d = std::hypot(jam.position_m[0], jam.position_m[1]);
            if (d > 2.0 * sc.cell_radius_m)
                std::cerr << "warning: jammer at " << d
                          << " m is outside the simulated area\n";
        }
    }

    if (root.contains("mobility")) {
        const auto& mob = root.at("mobility");
        check_known_keys(mob, "mobility.",
                         {"grid_size", "zone_side_m", "alpha", "tau", "t_max",
                          "epoch_s", "speed_mps", "n_nodes", "duration_s"});
        auto& m = cfg.mobility;
        m.grid_size = static_cast<int>(get_num(mob, "grid_size", m.grid_size));
        m.zone_side_m = get_num(mob, "zone_side_m", m.zone_side_m);
        m.alpha = get_num(mob, "alpha", m.alpha);
        m.tau = get_num(mob, "tau", m.tau);
        m.t_max = static_cast<int>(get_num(mob, "t_max", m.t_max));
        m.epoch_duration_s = get_num(mob, "epoch_s", m.epoch_duration_s);
        m.speed_mps = get_num(mob, "speed_mps", m.speed_mps);
        cfg.trace_nodes = static_cast<int>(get_num(mob, "n_nodes", cfg.trace_nodes));
        cfg.trace_duration_s = get_num(mob, "duration_s", cfg.trace_duration_s);
        cfg.cell.mobility = m;
    }

    if (root.contains("sweep")) {
        const auto& sw = root.at("sweep");
        check_known_keys(sw, "sweep.", {"axis", "values"});
        const std::string axis = sw.value("axis", "jam_power");
        if (axis == "jam_power") cfg.sweep_axis = SweepAxis::JAM_POWER;
        else if (axis == "jam_distance") cfg.sweep_axis = SweepAxis::JAM_DISTANCE;
        else if (axis == "n_jammers") cfg.sweep_axis = SweepAxis::N_JAMMERS;
        else throw std::runtime_error("config: invalid sweep.axis '" + axis + "'");
        if (sw.contains("values"))
            for (const auto& v : sw.at("values"))
                cfg.sweep_values.push_back(v.get<double>());
    }

    // hash the canonical resolved form for reproducibility stamps
    json resolved = root;
    resolved["experiment"] = kind;
    json seeds = json::array();
    for (auto s : cfg.seeds) seeds.push_back(s);
    resolved["seeds"] = seeds;
    std::ostringstream hex;
    hex << std::hex << fnv1a(resolved.dump());
    cfg.config_hash = hex.str();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace jamcell
