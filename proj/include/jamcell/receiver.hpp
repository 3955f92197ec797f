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
#include <string>
#include <vector>

#include "jamcell/ssb.hpp"

namespace jamcell {

struct PssDetection {
    int n_id_2 = -1;
    long timing_offset = -1;   // first useful sample of the PSS symbol
    double peak_metric = 0.0;  // peak / local median floor
    bool detected = false;
};

inline constexpr double kDefaultPssThreshold = 8.0;

/// Time-domain PSS replica (useful part only, no CP) for one candidate,
/// with the SSB band centered in the occupied band.
std::vector<cd> pss_replica(const NumerologyConfig& num, int n_id_2);

/// Cross-correlates the capture against all three PSS replicas and reports
/// the argmax over (candidate, lag). The floor is the median |correlation|
/// in a window around the peak, peak vicinity excluded, so that jamming
/// energy near the burst degrades the metric the way it degrades the
/// correlation plots it models.
PssDetection detect_pss(std::span<const cd> samples, const NumerologyConfig& num,
                        double threshold = kDefaultPssThreshold);

/// |correlation| profile for one candidate (for plot export).
std::vector<double> pss_correlation_profile(std::span<const cd> samples,
                                            const NumerologyConfig& num,
                                            int n_id_2);

/// One received SSB, 240 subcarriers x 4 symbols.
struct SsbGrid {
    std::array<cd, kSsbSubcarriers * kSsbSymbols> re{};

    cd& at(int subcarrier, int symbol) {
        return re[static_cast<size_t>(symbol) * kSsbSubcarriers + subcarrier];
    }
    const cd& at(int subcarrier, int symbol) const {
        return re[static_cast<size_t>(symbol) * kSsbSubcarriers + subcarrier];
    }
};

/// Demodulate the four SSB symbols given the PSS useful-part start sample.
SsbGrid extract_ssb_grid(std::span<const cd> samples, const NumerologyConfig& num,
                         long pss_useful_start);

struct SssDetection {
    int n_id_1 = -1;
    std::vector<double> scores;  // one per candidate, 336 entries
};

/// Correlates the received SSS REs against all 336 candidates for the given
/// PSS identity.
SssDetection detect_sss(const SsbGrid& grid, int n_id_2);

/// Which burst index produced this grid, by DM-RS sequence match.
int identify_ssb_index(const SsbGrid& grid, const CellIdentity& pci);

/// Least-squares channel estimate across the SSB band (per subcarrier,
/// linearly interpolated between DM-RS positions, averaged over symbols).
std::vector<cd> dmrs_channel_profile(const SsbGrid& grid, const CellIdentity& pci,
                                     int ssb_index);

/// DM-RS based SJNR for one burst, in dB. PCI mismatch shows up as a low
/// estimate, not an error.
double estimate_dmrs_sjnr(const SsbGrid& grid, const CellIdentity& pci,
                          int ssb_index);

struct PbchDecode {
    double evm_rms_percent = 0.0;
    bool mib_decodable = false;
};

inline constexpr double kDefaultEvmDecodeThreshold = 35.0;

/// Zero-forcing equalization of PBCH REs with the DM-RS channel estimate;
/// EVM against the known transmitted QPSK. Decodability is proxied by the
/// EVM threshold. Optionally exports the equalized constellation.
PbchDecode decode_pbch(const SsbGrid& grid, const CellIdentity& pci,
                       int ssb_index, uint32_t mib_bits,
                       double evm_threshold = kDefaultEvmDecodeThreshold,
                       std::vector<cd>* constellation = nullptr);

/// EVM of the PSS REs equalized with the DM-RS-derived band estimate.
double pss_evm_rms(const SsbGrid& grid, const CellIdentity& pci, int ssb_index);

/// Equalize received symbols with a wideband scalar estimate and measure EVM.
double pdsch_evm(std::span<const cd> rx, std::span<const cd> ref,
                 cd channel_estimate, std::vector<cd>* constellation = nullptr);

struct SsbMeasurement {
    std::optional<CellIdentity> pci_detected;
    std::vector<double> dmrs_sjnr_db;  // one entry per received burst
    double pbch_evm_rms = 0.0;
    double pss_evm_rms = 0.0;
    bool mib_decodable = false;
};

struct McsEntry {
    std::string name;
    ModScheme scheme = ModScheme::QPSK;
    double code_rate = 0.5;
    double sinr_threshold_db = 0.0;   // logistic midpoint
    double logistic_slope = 2.0;      // per dB
};

/// Logistic SINR -> BLER curve: 1 / (1 + exp(slope * (sinr - threshold))).
double sinr_to_bler(double sinr_db, const McsEntry& mcs);

}  // namespace jamcell
