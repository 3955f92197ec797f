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

#pragma once

#include <array>
#include <vector>

#include "jamcell/channel.hpp"
#include "jamcell/ssb.hpp"

namespace jamcell {

enum class JammerKind { BARRAGE, SMART_SSB, SMART_PBCH };

struct JammerSpec {
    JammerKind kind = JammerKind::BARRAGE;
    double tx_power_dbm = 20.0;
    double gain_db = 0.0;
    std::array<double, 2> position_m{0.0, 0.0};
};

/// p_re_rx / (p_j_re + p_n_re), all in linear watts (or consistent units).
double sjnr(double p_re_rx, double p_j_re, double p_n_re);

/// Minimum per-RE jamming power that pushes SJNR down to gamma_th:
/// p_re_rx/gamma_th - p_n_re, clamped at 0.
double min_jam_re_power(double p_re_rx, double gamma_th, double p_n_re);

/// BARRAGE -> 12*n_rb*p_min_re; smart kinds -> 12*n_rb_ssb*p_min_re.
double total_jam_power(JammerKind kind, int n_rb, int n_rb_ssb, double p_min_re);

/// Jamming time samples at the jammer antenna. Total transmit power during
/// ON symbols equals tx_power (linear mW units in the grid domain):
///   BARRAGE    - noise on all occupied subcarriers, every symbol;
///   SMART_SSB  - noise on the SSB's 240 subcarriers during burst symbols;
///   SMART_PBCH - noise only on PBCH + DM-RS REs during burst symbols.
std::vector<cd> synthesize_jam_waveform(const JammerSpec& spec,
                                        const NumerologyConfig& num,
                                        const SsbBurstSet* burst_set,
                                        int n_symbols, Rng& rng);

/// Expected per-RE jamming power at a receiver position, jammers summed in
/// the linear domain. Powers in mW.
struct JamFootprint {
    int n_subcarriers = 0;
    int n_symbols = 0;
    std::vector<double> per_re_mw;  // subcarrier-major per symbol
    double total_rx_power_dbm = -1e9;

    double& at(int subcarrier, int symbol) {
        return per_re_mw[static_cast<size_t>(symbol) * n_subcarriers + subcarrier];
    }
    double at(int subcarrier, int symbol) const {
        return per_re_mw[static_cast<size_t>(symbol) * n_subcarriers + subcarrier];
    }
};

JamFootprint aggregate_jammers(const std::vector<JammerSpec>& specs,
                               std::array<double, 2> rx_position_m,
                               const NumerologyConfig& num,
                               const SsbBurstSet* burst_set, int n_symbols,
                               double carrier_hz, double rx_gain_db = 0.0);

}  // namespace jamcell
