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

#include <optional>

#include "jamcell/jammer.hpp"
#include "jamcell/receiver.hpp"

namespace jamcell {

/// Single-link waveform scenario: one gNB, one UE, optional jammers.
struct LinkScenario {
    double scs_hz = 30e3;
    int n_rb = 51;
    int pci = 350;
    uint32_t mib_bits = 0xA5C3F0;  // 24-bit stand-in payload

    double gnb_power_dbm = 32.0;
    double carrier_hz = 2.635e9;
    double noise_figure_db = 7.0;
    bool thermal_noise = true;
    double gnb_gain_db = 0.0;
    double ue_gain_db = 0.0;

    std::array<double, 2> gnb_pos_m{0.0, 0.0};
    std::array<double, 2> ue_pos_m{60.0, 60.0};
    std::vector<JammerSpec> jammers;

    int boost_index = 2;
    double boost_db = 0.0;

    bool fading = false;
    double delay_spread_ns = 30.0;

    int n_slots = 4;  // capture length; bursts that fit are transmitted
    uint64_t seed = 1;

    double pss_threshold = kDefaultPssThreshold;
    double evm_decode_threshold = kDefaultEvmDecodeThreshold;
    ModScheme pdsch_mod = ModScheme::QAM16;
};

struct BurstMeasurement {
    int ssb_index = 0;
    double dmrs_sjnr_db = 0.0;
    double pbch_evm_rms = 0.0;
    bool mib_decodable = false;
    double pss_evm_rms = 0.0;
};

struct LinkResult {
    PssDetection pss;
    std::optional<int> pci_detected;
    bool pci_ok = false;      // detected, correct PCI, exact burst timing
    long true_pss_offset = 0; // useful-part start of the first burst's PSS

    std::vector<BurstMeasurement> bursts;  // genie-timed, one per sent burst
    double pdsch_evm_rms = 0.0;
    double mean_pbch_evm = 0.0;
    double mean_pss_evm = 0.0;
    bool mib_decodable = false;  // any burst decodable

    // dumps for plot export (filled when collect_dumps)
    std::vector<double> pss_correlation;
    std::vector<double> sss_scores;
    std::vector<cd> pdsch_constellation;
    std::vector<cd> pbch_constellation;
};

/// Transmit an SSB burst set plus 16-QAM PDSCH, push it through FSPL (and
/// optionally CDL-A fading), add jamming and thermal noise, then run the
/// cell-search receiver. With detect_only the measurement stage is skipped.
/// Burst measurements use the true transmit timing so that EVM/SJNR remain
/// defined even when detection fails.
LinkResult run_ssb_attack(const LinkScenario& sc, bool collect_dumps = false,
                          bool detect_only = false);

}  // namespace jamcell
