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

#include "jamcell/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jamcell {

std::vector<double> zone_distance_pmf(double alpha, int d_max) {
    if (d_max < 0) throw std::invalid_argument("zone_distance_pmf: d_max < 0");
    std::vector<double> p(d_max + 1);
    double sum = 0.0;
    for (int d = 0; d <= d_max; ++d) {
        p[d] = std::pow(1.0 + d, -alpha);
        sum += p[d];
    }
    for (auto& v : p) v /= sum;
    return p;
}

std::vector<double> stay_time_pmf(double tau, int t_max) {
    if (tau <= 0.0) throw std::invalid_argument("stay_time_pmf: tau must be positive");
    if (t_max < 1) throw std::invalid_argument("stay_time_pmf: t_max < 1");
    std::vector<double> p(t_max);
    double sum = 0.0;
    for (int t = 1; t <= t_max; ++t) {
        p[t - 1] = std::pow(t, -tau);
        sum += p[t - 1];
    }
    for (auto& v : p) v /= sum;
    return p;
}

int zone_distance(const ZoneCoord& a, const ZoneCoord& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

namespace {

std::array<double, 2> uniform_in_zone(const ZoneCoord& zone, const StepsConfig& cfg,
                                      Rng& rng) {
    return {(zone.x + rng.uniform()) * cfg.zone_side_m,
            (zone.y + rng.uniform()) * cfg.zone_side_m};
}

// Zones at exact Chebyshev distance d from `center`, clipped to the grid.
std::vector<ZoneCoord> ring_zones(const ZoneCoord& center, int d, int grid_size) {
    std::vector<ZoneCoord> ring;
    if (d == 0) {
        ring.push_back(center);
        return ring;
    }
    for (int x = center.x - d; x <= center.x + d; ++x)
        for (int y = center.y - d; y <= center.y + d; ++y) {
            if (std::max(std::abs(x - center.x), std::abs(y - center.y)) != d) continue;
            if (x < 0 || y < 0 || x >= grid_size || y >= grid_size) continue;
            ring.push_back({x, y});
        }
    return ring;
}

}  // namespace

StepsState steps_init(const ZoneCoord& preferred, const StepsConfig& cfg, Rng& rng) {
    StepsState state;
    state.preferred_zone = preferred;
    state.current_zone = preferred;
    state.position_m = uniform_in_zone(preferred, cfg, rng);
    const auto stay = stay_time_pmf(cfg.tau, cfg.t_max);
    state.stay_remaining = rng.sample_pmf(stay) + 1;
    return state;
}

StepsState steps_step(const StepsState& state, const StepsConfig& cfg, Rng& rng) {
    StepsState next = state;

    if (next.stay_remaining > 0) {
        --next.stay_remaining;
        // waypoint move inside the current zone at constant speed
        const auto wp = uniform_in_zone(next.current_zone, cfg, rng);
        const double dx = wp[0] - next.position_m[0];
        const double dy = wp[1] - next.position_m[1];
        const double dist = std::hypot(dx, dy);
        const double reach = cfg.speed_mps * cfg.epoch_duration_s;
        if (dist <= reach || dist == 0.0) {
            next.position_m = wp;
        } else {
            next.position_m[0] += dx / dist * reach;
            next.position_m[1] += dy / dist * reach;
        }
        return next;
    }

    const auto pmf = zone_distance_pmf(cfg.alpha, cfg.grid_size - 1);
    int d = rng.sample_pmf(pmf);
    auto ring = ring_zones(next.preferred_zone, d, cfg.grid_size);
    while (ring.empty()) {
        --d;  // ring entirely outside the grid; fall back toward the center
        ring = ring_zones(next.preferred_zone, d, cfg.grid_size);
    }
    next.current_zone = ring[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(ring.size()) - 1))];
    next.position_m = uniform_in_zone(next.current_zone, cfg, rng);
    const auto stay = stay_time_pmf(cfg.tau, cfg.t_max);
    next.stay_remaining = rng.sample_pmf(stay) + 1;
    return next;
}

MobilityTrace generate_trace(const StepsConfig& cfg, int n_nodes,
                             double duration_s, uint64_t seed) {
    if (n_nodes < 1) throw std::invalid_argument("generate_trace: n_nodes < 1");
    const double epochs_f = duration_s / cfg.epoch_duration_s;
    const int n_epochs = static_cast<int>(std::llround(epochs_f));
    if (std::abs(epochs_f - n_epochs) > 1e-9 || n_epochs < 1)
        throw std::invalid_argument("generate_trace: duration must be a multiple of the epoch");

    Rng root(seed);
    MobilityTrace trace;
    trace.n_nodes = n_nodes;
    trace.n_epochs = n_epochs;
    trace.positions.resize(n_nodes);

    for (int node = 0; node < n_nodes; ++node) {
        Rng rng = root.fork(static_cast<uint64_t>(node));
        ZoneCoord preferred{rng.uniform_int(0, cfg.grid_size - 1),
                            rng.uniform_int(0, cfg.grid_size - 1)};
        StepsState state = steps_init(preferred, cfg, rng);
        trace.positions[node].reserve(n_epochs);
        for (int e = 0; e < n_epochs; ++e) {
            trace.positions[node].push_back(state.position_m);
            state = steps_step(state, cfg, rng);
        }
    }
    return trace;
}

}  // namespace jamcell
