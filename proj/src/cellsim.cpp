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

#include "jamcell/cellsim.hpp"

#include <cmath>
#include <stdexcept>

namespace jamcell {

std::vector<McsEntry> default_mcs_table() {
    return {
        {"qpsk-r12", ModScheme::QPSK, 0.5, 0.0, 2.0},
        {"16qam-r12", ModScheme::QAM16, 0.5, 10.0, 2.0},
        {"64qam-r34", ModScheme::QAM64, 0.75, 18.0, 2.0},
    };
}

CellMetrics MetricsAccumulator::finalize(double duration_s) const {
    CellMetrics m;
    m.throughput_bps = throughput_bits_ / duration_s;
    m.goodput_bps = goodput_bits_ / duration_s;
    m.retx_fraction = tx_count_ > 0 ? static_cast<double>(retx_count_) / tx_count_ : 0.0;
    return m;
}

const McsEntry& select_mcs(double wideband_sinr_db,
                           const std::vector<McsEntry>& table, double backoff_db) {
    if (table.empty()) throw std::invalid_argument("select_mcs: empty table");
    const McsEntry* best = &table.front();
    for (const auto& entry : table)
        if (entry.sinr_threshold_db + backoff_db <= wideband_sinr_db &&
            entry.sinr_threshold_db >= best->sinr_threshold_db)
            best = &entry;
    if (best->sinr_threshold_db + backoff_db > wideband_sinr_db)
        best = &table.front();
    return *best;
}

namespace {

struct UeState {
    std::array<double, 2> pos{0.0, 0.0};
    StepsState mobility;
    HarqProcess harq;
    double queue_bits = 0.0;
    long next_sdu = 0;
    double sinr_sum = 0.0;
    long sinr_cnt = 0;
    Rng rng{0};
};

double tb_capacity_bits(const McsEntry& mcs, int n_re, int symbols_per_slot) {
    return std::floor(n_re * symbols_per_slot * bits_per_symbol(mcs.scheme) *
                      mcs.code_rate);
}

}  // namespace

CellMetrics run_cell(const Scenario& sc) {
    if (sc.n_ue < 1) throw std::invalid_argument("run_cell: n_ue < 1");
    if (sc.duration_frames < 1)
        throw std::invalid_argument("run_cell: duration_frames < 1");

    const auto num = build_numerology(sc.scs_hz, sc.n_rb);
    const int n_re = num.n_subcarriers();
    const int slots = sc.duration_frames * num.slots_per_frame;
    const double slot_s = 0.01 / num.slots_per_frame;
    const double duration_s = sc.duration_frames * 0.01;
    const double p_noise_re = dbm_to_mw(noise_power_re_dbm(sc.scs_hz, sc.noise_figure_db));

    // Mobility zone grid covers the [-R, R]^2 square around the gNB.
    StepsConfig mob = sc.mobility;
    mob.grid_size = std::max(
        1, static_cast<int>(std::ceil(2.0 * sc.cell_radius_m / mob.zone_side_m)));
    const double grid_half = mob.grid_size * mob.zone_side_m / 2.0;

    Rng root(sc.seed);
    std::vector<UeState> ues(sc.n_ue);
    for (int u = 0; u < sc.n_ue; ++u) {
        auto& ue = ues[u];
        ue.rng = root.fork(1000 + u);
        const double r = sc.cell_radius_m * std::sqrt(ue.rng.uniform());
        const double th = ue.rng.uniform(0.0, 2.0 * M_PI);
        ue.pos = {r * std::cos(th), r * std::sin(th)};
        ZoneCoord zone{
            std::clamp(static_cast<int>((ue.pos[0] + grid_half) / mob.zone_side_m), 0,
                       mob.grid_size - 1),
            std::clamp(static_cast<int>((ue.pos[1] + grid_half) / mob.zone_side_m), 0,
                       mob.grid_size - 1)};
        ue.mobility = steps_init(zone, mob, ue.rng);
        ue.mobility.position_m = {ue.pos[0] + grid_half, ue.pos[1] + grid_half};
        ue.harq.max_attempts = sc.harq_max_attempts;
    }

    MetricsAccumulator acc;
    CellMetrics metrics;
    metrics.ue_logs.resize(sc.n_ue);
    double sinr_total = 0.0;
    long sinr_n = 0;

    for (int slot = 0; slot < slots; ++slot) {
        if (slot > 0 && slot % num.slots_per_frame == 0) {
            for (auto& ue : ues) {
                ue.mobility = steps_step(ue.mobility, mob, ue.rng);
                ue.pos = {ue.mobility.position_m[0] - grid_half,
                          ue.mobility.position_m[1] - grid_half};
            }
        }

        if (!sc.full_buffer) {
            const double arrival = sc.app_rate_bps * slot_s;
            for (auto& ue : ues) ue.queue_bits += arrival;
        }

        auto& ue = ues[slot % sc.n_ue];

        // per-RE signal and jam powers at the UE, linear mW
        const double d = std::max(1.0, std::hypot(ue.pos[0], ue.pos[1]));
        double p_sig = dbm_to_mw(sc.gnb_power_dbm - lin_to_db(n_re) + sc.gnb_gain_db +
                                 sc.ue_gain_db - fspl_db(sc.carrier_hz, d));
        if (sc.fading) p_sig *= std::norm(ue.rng.cnormal());

        double p_jam = 0.0;
        for (const auto& jam : sc.jammers) {
            // Smart kinds only touch SSB symbols and are irrelevant for the
            // scheduled PDSCH slots modeled here.
            if (jam.kind != JammerKind::BARRAGE) continue;
            const double dj = std::max(
                1.0, std::hypot(ue.pos[0] - jam.position_m[0], ue.pos[1] - jam.position_m[1]));
            double p = dbm_to_mw(jam.tx_power_dbm - lin_to_db(n_re) + jam.gain_db +
                                 sc.ue_gain_db - fspl_db(sc.carrier_hz, dj));
            if (sc.fading) p *= std::norm(ue.rng.cnormal());
            p_jam += p;
        }

        const double sinr_db = lin_to_db(p_sig / (p_jam + p_noise_re));
        ue.sinr_sum += sinr_db;
        ++ue.sinr_cnt;
        sinr_total += sinr_db;
        ++sinr_n;

        const auto& mcs = select_mcs(sinr_db, sc.mcs_table, sc.mcs_backoff_db);
        const double bler = sinr_to_bler(sinr_db, mcs);

        auto& log = metrics.ue_logs[slot % sc.n_ue];
        double bits = 0.0;
        bool new_data = false;
        if (ue.harq.pending) {
            bits = ue.harq.tb_bits;
        } else {
            const double cap = tb_capacity_bits(mcs, n_re, num.symbols_per_slot);
            bits = sc.full_buffer ? cap : std::min(cap, ue.queue_bits);
            if (bits < 1.0) continue;  // nothing to send
            ue.harq.sdu_id = ue.next_sdu++;
            ue.harq.attempts = 0;
            ue.harq.tb_bits = bits;
            ue.harq.pending = true;
            new_data = true;
        }

        ++ue.harq.attempts;
        acc.add_tx(bits, new_data);
        ++log.tx_count;
        if (!new_data) ++log.retx_count;

        if (ue.rng.uniform() >= bler) {
            ue.harq.pending = false;
            if (!sc.full_buffer) ue.queue_bits = std::max(0.0, ue.queue_bits - bits);
        } else if (ue.harq.attempts >= ue.harq.max_attempts) {
            ue.harq.pending = false;  // dropped
            ++log.drop_count;
            if (!sc.full_buffer) ue.queue_bits = std::max(0.0, ue.queue_bits - bits);
        }
    }

    auto counted = acc.finalize(duration_s);
    metrics.throughput_bps = counted.throughput_bps;
    metrics.goodput_bps = counted.goodput_bps;
    metrics.retx_fraction = counted.retx_fraction;
    metrics.mean_sinr_db = sinr_n > 0 ? sinr_total / sinr_n : 0.0;
    for (int u = 0; u < sc.n_ue; ++u)
        metrics.ue_logs[u].mean_sinr_db =
            ues[u].sinr_cnt > 0 ? ues[u].sinr_sum / ues[u].sinr_cnt : 0.0;
    return metrics;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<uint64_t>& seeds) {
    std::vector<SweepRow> rows;
    for (double value : values) {
        Scenario sc = base;
        switch (axis) {
            case SweepAxis::JAM_POWER:
                for (auto& jam : sc.jammers) jam.tx_power_dbm = value;
                break;
            case SweepAxis::JAM_DISTANCE:
                for (auto& jam : sc.jammers) {
                    const double d = std::hypot(jam.position_m[0], jam.position_m[1]);
                    const double s = d > 0.0 ? value / d : 0.0;
                    jam.position_m = {jam.position_m[0] * s, jam.position_m[1] * s};
                }
                break;
            case SweepAxis::N_JAMMERS: {
                JammerSpec tmpl = base.jammers.empty() ? JammerSpec{} : base.jammers.front();
                const double d = base.jammers.empty()
                                     ? 224.0
                                     : std::hypot(tmpl.position_m[0], tmpl.position_m[1]);
                sc.jammers.clear();
                for (int j = 0; j < static_cast<int>(value); ++j) {
                    const double az = j * 2.0 * M_PI / 3.0;  // 120 degrees apart
                    JammerSpec jam = tmpl;
                    jam.position_m = {d * std::cos(az), d * std::sin(az)};
                    sc.jammers.push_back(jam);
                }
                break;
            }
        }
        for (uint64_t seed : seeds) {
            sc.seed = seed;
            const auto m = run_cell(sc);
            rows.push_back({value, seed, m.throughput_bps, m.goodput_bps,
                            m.mean_sinr_db, m.retx_fraction});
        }
    }
    return rows;
}

}  // namespace jamcell
