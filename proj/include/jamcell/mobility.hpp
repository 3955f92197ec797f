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
#include <cstdint>
#include <vector>

#include "jamcell/rng.hpp"

namespace jamcell {

/// STEPS mobility: power-law zone attraction and power-law stay times on a
/// square zone grid, random-waypoint motion inside the current zone.
struct StepsConfig {
    int grid_size = 10;        // Z x Z zones
    double zone_side_m = 100.0;
    double alpha = 2.0;        // zone-attraction exponent
    double tau = 1.5;          // stay-time exponent
    int t_max = 10;            // max stay, in epochs
    double epoch_duration_s = 0.01;
    double speed_mps = 10.0;
};

struct ZoneCoord {
    int x = 0;
    int y = 0;
    bool operator==(const ZoneCoord&) const = default;
};

struct StepsState {
    ZoneCoord preferred_zone;
    ZoneCoord current_zone;
    std::array<double, 2> position_m{0.0, 0.0};  // absolute, within current zone
    int stay_remaining = 0;                      // epochs
};

/// p(d) proportional to 1/(1+d)^alpha over d in {0..d_max}, normalized.
std::vector<double> zone_distance_pmf(double alpha, int d_max);

/// p(t) proportional to 1/t^tau over t in {1..t_max}; index i holds t = i+1.
std::vector<double> stay_time_pmf(double tau, int t_max);

/// Chebyshev distance between zones.
int zone_distance(const ZoneCoord& a, const ZoneCoord& b);

/// Fresh state: position uniform inside the preferred zone, stay time drawn
/// from the stay-time pmf.
StepsState steps_init(const ZoneCoord& preferred, const StepsConfig& cfg, Rng& rng);

/// One epoch: waypoint move within the zone while the stay lasts, otherwise
/// jump to a zone at a power-law Chebyshev distance from the preferred zone
/// (ring clipped to the grid) and draw a new stay time.
StepsState steps_step(const StepsState& state, const StepsConfig& cfg, Rng& rng);

struct MobilityTrace {
    int n_nodes = 0;
    int n_epochs = 0;
    // positions[node][epoch]
    std::vector<std::vector<std::array<double, 2>>> positions;
};

/// Deterministic given seed; positions stay inside the Z * zone_side square.
MobilityTrace generate_trace(const StepsConfig& cfg, int n_nodes,
                             double duration_s, uint64_t seed);

}  // namespace jamcell
