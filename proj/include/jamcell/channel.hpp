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

#include <span>
#include <vector>

#include "jamcell/rng.hpp"
#include "jamcell/waveform.hpp"

namespace jamcell {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return db_to_lin(dbm); }
inline double mw_to_dbm(double mw) { return lin_to_db(mw); }

struct LinkBudget {
    double tx_power_dbm = 0.0;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double carrier_hz = 2.635e9;
    double distance_m = 1.0;
};

/// Free-space path loss, 20*log10(4*pi*d / lambda).
double fspl_db(double carrier_hz, double distance_m);

/// tx_power + tx_gain + rx_gain - fspl.
double received_power_dbm(const LinkBudget& budget);

/// Thermal noise per resource element: -174 + 10*log10(scs) + NF, in dBm.
double noise_power_re_dbm(double scs_hz, double noise_figure_db);

/// Tapped-delay-line profile; linear tap powers sum to 1, delays sorted.
struct FadingProfile {
    std::vector<double> normalized_delays;
    std::vector<double> tap_powers_db;
    double delay_spread_ns = 30.0;
};

/// CDL-A delay/power profile reduced to a tapped delay line.
FadingProfile cdl_a(double delay_spread_ns = 30.0);

/// Profile from explicit (delay, power) tables; normalizes and sorts.
FadingProfile make_profile(std::vector<double> normalized_delays,
                           std::vector<double> tap_powers_db,
                           double delay_spread_ns);

/// Complex tap coefficients on the sample grid; quasi-static per slot.
struct ChannelRealization {
    std::vector<cd> taps;
};

/// Delays scaled by DS, quantized to the sample grid; Rayleigh coefficient
/// per profile tap. Expected total tap power is 1.
ChannelRealization realize_fading(const FadingProfile& profile,
                                  const NumerologyConfig& num, Rng& rng);

/// Linear convolution with the taps plus a scalar gain 10^(net_gain_db/20).
/// Output length equals input length (tail truncated).
std::vector<cd> apply_channel(std::span<const cd> samples,
                              const ChannelRealization& ch,
                              double net_gain_db = 0.0);

}  // namespace jamcell
