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

#include <string>

#include "jamcell/cellsim.hpp"
#include "jamcell/linklevel.hpp"

namespace jamcell {

enum class ExperimentKind { SSB_ATTACK, CELL_SWEEP, MOBILITY_TRACE };

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::SSB_ATTACK;
    LinkScenario link;
    Scenario cell;
    StepsConfig mobility;
    int trace_nodes = 20;
    double trace_duration_s = 10.0;
    SweepAxis sweep_axis = SweepAxis::JAM_POWER;
    std::vector<double> sweep_values;
    std::vector<uint64_t> seeds{1};
    std::string config_hash;  // FNV-1a of the resolved config, hex
};

/// Parse + validate a JSON config; absent fields fall back to the default
/// scenario settings. Unknown fields and invalid values raise
/// std::runtime_error with the offending field named. An empty file yields
/// the full default configuration.
ExperimentConfig load_config(const std::string& path);

/// Parse from a JSON string (same semantics; used by tests).
ExperimentConfig parse_config(const std::string& json_text);

/// Run the configured experiment, writing seed-stamped CSV artifacts under
/// out_dir. Reruns with the same config and seeds are byte-identical.
/// Returns 0 iff all requested runs completed.
int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                   int parallel = 1);

}  // namespace jamcell
