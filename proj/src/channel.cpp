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

#include "jamcell/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jamcell {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

double fspl_db(double carrier_hz, double distance_m) {
    if (distance_m <= 0.0)
        throw std::invalid_argument("fspl_db: distance must be positive");
    if (carrier_hz <= 0.0)
        throw std::invalid_argument("fspl_db: carrier must be positive");
    const double lambda = kSpeedOfLight / carrier_hz;
    return 20.0 * std::log10(4.0 * M_PI * distance_m / lambda);
}

double received_power_dbm(const LinkBudget& b) {
    return b.tx_power_dbm + b.tx_gain_db + b.rx_gain_db -
           fspl_db(b.carrier_hz, b.distance_m);
}

double noise_power_re_dbm(double scs_hz, double noise_figure_db) {
    if (scs_hz <= 0.0)
        throw std::invalid_argument("noise_power_re_dbm: scs must be positive");
    return -174.0 + 10.0 * std::log10(scs_hz) + noise_figure_db;
}

FadingProfile make_profile(std::vector<double> normalized_delays,
                           std::vector<double> tap_powers_db,
                           double delay_spread_ns) {
    if (normalized_delays.size() != tap_powers_db.size() || normalized_delays.empty())
        throw std::invalid_argument("make_profile: delay/power tables mismatch");
    for (double d : normalized_delays)
        if (d < 0.0) throw std::invalid_argument("make_profile: negative delay");

    std::vector<size_t> order(normalized_delays.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return normalized_delays[a] < normalized_delays[b];
    });

    double total = 0.0;
    for (double p : tap_powers_db) total += db_to_lin(p);
    const double norm_db = lin_to_db(total);

    FadingProfile profile;
    profile.delay_spread_ns = delay_spread_ns;
    for (size_t i : order) {
        profile.normalized_delays.push_back(normalized_delays[i]);
        profile.tap_powers_db.push_back(tap_powers_db[i] - norm_db);
    }
    return profile;
}

FadingProfile cdl_a(double delay_spread_ns) {
    return make_profile(
        {0.0000, 0.3819, 0.4025, 0.5868, 0.4610, 0.5375, 0.6708, 0.5750,
         0.7618, 1.5375, 1.8978, 2.2242, 2.1718, 2.4942, 2.5119, 3.0582,
         4.0810, 4.4579, 4.5695, 4.7966, 5.0066, 5.3043, 9.6586},
        {-13.4, 0.0, -2.2, -4.0, -6.0, -8.2, -9.9, -10.5, -7.5, -15.9, -6.6,
         -16.7, -12.4, -15.2, -10.8, -11.3, -12.7, -16.2, -18.3, -18.9, -16.6,
         -19.9, -29.7},
        delay_spread_ns);
}

ChannelRealization realize_fading(const FadingProfile& profile,
                                  const NumerologyConfig& num, Rng& rng) {
    const double ds_s = profile.delay_spread_ns * 1e-9;
    int max_idx = 0;
    std::vector<int> idx(profile.normalized_delays.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        idx[i] = static_cast<int>(
            std::llround(profile.normalized_delays[i] * ds_s * num.sample_rate_hz));
        max_idx = std::max(max_idx, idx[i]);
    }

    ChannelRealization ch;
    ch.taps.assign(max_idx + 1, cd{});
    for (size_t i = 0; i < idx.size(); ++i) {
        const double amp = std::sqrt(db_to_lin(profile.tap_powers_db[i]));
        ch.taps[idx[i]] += amp * rng.cnormal();
    }
    return ch;
}

std::vector<cd> apply_channel(std::span<const cd> samples,
                              const ChannelRealization& ch, double net_gain_db) {
    const double gain = std::pow(10.0, net_gain_db / 20.0);
    std::vector<cd> out(samples.size(), cd{});
    for (size_t k = 0; k < ch.taps.size(); ++k) {
        const cd tap = ch.taps[k] * gain;
        if (tap == cd{}) continue;
        for (size_t n = k; n < samples.size(); ++n) out[n] += tap * samples[n - k];
    }
    return out;
}

}  // namespace jamcell
