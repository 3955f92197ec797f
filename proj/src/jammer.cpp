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

#include "jamcell/jammer.hpp"

#include <cmath>
#include <stdexcept>

namespace jamcell {

namespace {

// Targeted (subcarrier, symbol) cells of one jammer within [0, n_symbols),
// as a per-symbol list of subcarrier indices. Empty list = symbol is OFF.
std::vector<std::vector<int>> targeted_subcarriers(const JammerSpec& spec,
                                                   const NumerologyConfig& num,
                                                   const SsbBurstSet* burst_set,
                                                   int n_symbols) {
    const int n_sc = num.n_subcarriers();
    std::vector<std::vector<int>> target(n_symbols);

    if (spec.kind == JammerKind::BARRAGE) {
        std::vector<int> all(n_sc);
        for (int k = 0; k < n_sc; ++k) all[k] = k;
        for (auto& t : target) t = all;
        return target;
    }

    if (burst_set == nullptr)
        throw std::invalid_argument("jammer: smart kinds require a burst schedule");

    const int first_sc = ssb_first_subcarrier(num);
    const int v = burst_set->pci().pci % 4;
    for (const auto& burst : burst_set->bursts) {
        for (int l = 0; l < kSsbSymbols; ++l) {
            const int sym = burst.start_symbol + l;
            if (sym >= n_symbols) continue;
            if (spec.kind == JammerKind::SMART_SSB) {
                for (int k = 0; k < kSsbSubcarriers; ++k)
                    target[sym].push_back(first_sc + k);
            } else {  // SMART_PBCH: DM-RS and PBCH data REs only
                if (l == 0) continue;
                for (int k : pbch_dmrs_subcarriers(l, v))
                    target[sym].push_back(first_sc + k);
                for (int k : pbch_data_subcarriers(l, v))
                    target[sym].push_back(first_sc + k);
            }
        }
    }
    return target;
}

}  // namespace

double sjnr(double p_re_rx, double p_j_re, double p_n_re) {
    if (p_n_re <= 0.0)
        throw std::invalid_argument("sjnr: noise power must be positive");
    if (p_re_rx < 0.0 || p_j_re < 0.0)
        throw std::invalid_argument("sjnr: negative power");
    return p_re_rx / (p_j_re + p_n_re);
}

double min_jam_re_power(double p_re_rx, double gamma_th, double p_n_re) {
    if (gamma_th <= 0.0)
        throw std::invalid_argument("min_jam_re_power: gamma_th must be positive");
    return std::max(0.0, p_re_rx / gamma_th - p_n_re);
}

double total_jam_power(JammerKind kind, int n_rb, int n_rb_ssb, double p_min_re) {
    const int rb = kind == JammerKind::BARRAGE ? n_rb : n_rb_ssb;
    return 12.0 * rb * p_min_re;
}

std::vector<cd> synthesize_jam_waveform(const JammerSpec& spec,
                                        const NumerologyConfig& num,
                                        const SsbBurstSet* burst_set,
                                        int n_symbols, Rng& rng) {
    const auto target = targeted_subcarriers(spec, num, burst_set, n_symbols);
    const double p_total = dbm_to_mw(spec.tx_power_dbm);

    ResourceGrid grid(num, n_symbols);
    for (int sym = 0; sym < n_symbols; ++sym) {
        if (target[sym].empty()) continue;
        const double amp = std::sqrt(p_total / target[sym].size());
        for (int k : target[sym]) grid.at(k, sym) = amp * rng.cnormal();
    }
    return ofdm_modulate(grid);
}

JamFootprint aggregate_jammers(const std::vector<JammerSpec>& specs,
                               std::array<double, 2> rx_position_m,
                               const NumerologyConfig& num,
                               const SsbBurstSet* burst_set, int n_symbols,
                               double carrier_hz, double rx_gain_db) {
    JamFootprint fp;
    fp.n_subcarriers = num.n_subcarriers();
    fp.n_symbols = n_symbols;
    fp.per_re_mw.assign(static_cast<size_t>(fp.n_subcarriers) * n_symbols, 0.0);

    for (const auto& spec : specs) {
        const double dx = rx_position_m[0] - spec.position_m[0];
        const double dy = rx_position_m[1] - spec.position_m[1];
        const double d = std::hypot(dx, dy);
        if (d == 0.0)
            throw std::invalid_argument("aggregate_jammers: receiver coincides with a jammer");
        const double path_db = spec.gain_db + rx_gain_db - fspl_db(carrier_hz, d);
        const double p_total_rx = dbm_to_mw(spec.tx_power_dbm) * db_to_lin(path_db);

        const auto target = targeted_subcarriers(spec, num, burst_set, n_symbols);
        for (int sym = 0; sym < n_symbols; ++sym) {
            if (target[sym].empty()) continue;
            const double p_re = p_total_rx / target[sym].size();
            for (int k : target[sym]) fp.at(k, sym) += p_re;
        }
    }

    double total = 0.0;
    for (double p : fp.per_re_mw) total += p;
    fp.total_rx_power_dbm = total > 0.0 ? mw_to_dbm(total / std::max(1, n_symbols))
                                        : -1e9;
    return fp;
}

}  // namespace jamcell
