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

#include <cstdint>
#include <vector>

#include "jamcell/jammer.hpp"
#include "jamcell/mobility.hpp"
#include "jamcell/receiver.hpp"

namespace jamcell {

std::vector<McsEntry> default_mcs_table();

/// System-level scenario. SINR uses FSPL plus a per-slot Rayleigh fading
/// scalar; waveform-level fidelity lives in the link-level path.
struct Scenario {
    double cell_radius_m = 500.0;
    double gnb_power_dbm = 32.0;
    int n_ue = 20;
    std::vector<JammerSpec> jammers;
    StepsConfig mobility;
    bool full_buffer = true;
    double app_rate_bps = 16e3;  // per-UE CBR when not full-buffer
    int duration_frames = 200;
    uint64_t seed = 1;

    double carrier_hz = 2.635e9;
    double scs_hz = 30e3;
    int n_rb = 51;
    double noise_figure_db = 7.0;
    double gnb_gain_db = 0.0;
    double ue_gain_db = 0.0;
    double rlc_sdu_bits = 9000.0;
    int harq_max_attempts = 4;
    std::vector<McsEntry> mcs_table = default_mcs_table();
    double mcs_backoff_db = 0.0;
    bool fading = true;
};

struct HarqProcess {
    long sdu_id = -1;
    int attempts = 0;
    int max_attempts = 4;
    bool pending = false;
    double tb_bits = 0.0;
};

struct UeLog {
    double mean_sinr_db = 0.0;
    long tx_count = 0;
    long retx_count = 0;
    long drop_count = 0;
};

struct CellMetrics {
    double throughput_bps = 0.0;  // all transmitted transport blocks
    double goodput_bps = 0.0;     // transport blocks carrying new data
    double mean_sinr_db = 0.0;
    double retx_fraction = 0.0;
    std::vector<UeLog> ue_logs;
};

/// Running throughput/goodput accounting: throughput counts every
/// transmitted transport block, goodput only first transmissions.
class MetricsAccumulator {
  public:
    void add_tx(double bits, bool new_data) {
        throughput_bits_ += bits;
        if (new_data) goodput_bits_ += bits;
        ++tx_count_;
        if (!new_data) ++retx_count_;
    }
    CellMetrics finalize(double duration_s) const;

  private:
    double throughput_bits_ = 0.0;
    double goodput_bits_ = 0.0;
    long tx_count_ = 0;
    long retx_count_ = 0;
};

/// Highest MCS whose threshold + backoff fits under the SINR; lowest if none.
const McsEntry& select_mcs(double wideband_sinr_db,
                           const std::vector<McsEntry>& table,
                           double backoff_db = 0.0);

/// Round-robin full-band scheduling, logistic BLER draws, HARQ with bounded
/// retransmissions. Deterministic given the scenario seed.
CellMetrics run_cell(const Scenario& scenario);

enum class SweepAxis { JAM_POWER, JAM_DISTANCE, N_JAMMERS };

struct SweepRow {
    double axis_value = 0.0;
    uint64_t seed = 0;
    double throughput_bps = 0.0;
    double goodput_bps = 0.0;
    double mean_sinr_db = 0.0;
    double retx_fraction = 0.0;
};

/// One run_cell per (value, seed). N_JAMMERS places barrage jammers at the
/// template's distance from the gNB at distinct azimuths 120 degrees apart.
std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<uint64_t>& seeds);

}  // namespace jamcell
