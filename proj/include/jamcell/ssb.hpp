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

#include "jamcell/waveform.hpp"

namespace jamcell {

inline constexpr int kSsbSubcarriers = 240;
inline constexpr int kSsbSymbols = 4;
inline constexpr int kPssFirstSubcarrier = 56;
inline constexpr int kPssLength = 127;
inline constexpr int kSsbBursts = 8;

struct CellIdentity {
    int n_id_1 = 0;  // 0..335
    int n_id_2 = 0;  // 0..2
    int pci = 0;     // 3*n_id_1 + n_id_2

    static CellIdentity from_pci(int pci);
    static CellIdentity from_parts(int n_id_1, int n_id_2);
};

/// BPSK m-sequence, d(n) = 1 - 2*x((n + 43*n_id_2) mod 127).
std::array<double, kPssLength> pss_sequence(int n_id_2);

/// Product of two shifted m-sequences, shifts derived from (n_id_1, n_id_2).
std::array<double, kPssLength> sss_sequence(int n_id_1, int n_id_2);

/// Length-31 Gold sequence c(n), n = 0..len-1 (Nc = 1600 discard).
std::vector<int> gold_sequence(uint32_t c_init, int len);

/// 144 unit-power QPSK pilots seeded by (pci, ssb_index).
std::vector<cd> pbch_dmrs(const CellIdentity& pci, int ssb_index);

/// One SSB: 240 subcarriers x 4 symbols, unused REs exactly zero.
struct SsbBlock {
    std::array<cd, kSsbSubcarriers * kSsbSymbols> symbols{};
    CellIdentity pci;
    int ssb_index = 0;
    uint32_t mib_bits = 0;  // 24-bit payload stand-in

    cd& at(int subcarrier, int symbol) {
        return symbols[static_cast<size_t>(symbol) * kSsbSubcarriers + subcarrier];
    }
    const cd& at(int subcarrier, int symbol) const {
        return symbols[static_cast<size_t>(symbol) * kSsbSubcarriers + subcarrier];
    }
    double energy() const;
};

/// DM-RS subcarriers (within 0..239) of SSB symbol 1..3 for offset v = pci%4.
std::vector<int> pbch_dmrs_subcarriers(int symbol, int v);
/// PBCH data subcarriers of SSB symbol 1..3 (complement of DM-RS positions).
std::vector<int> pbch_data_subcarriers(int symbol, int v);

/// PSS/SSS/DM-RS/PBCH mapped to their standard positions. PBCH payload is the
/// 24-bit MIB stand-in tiled over the 432 data REs and scrambled by a
/// pci-seeded Gold sequence (no polar coding).
SsbBlock assemble_ssb(const CellIdentity& pci, int ssb_index, uint32_t mib_bits);

struct SsbBurst {
    SsbBlock block;
    int start_symbol;  // within the 20 ms period
};

struct SsbBurstSet {
    std::vector<SsbBurst> bursts;
    std::array<double, kSsbBursts> beam_gains_db{};
    double periodicity_ms = 20.0;

    CellIdentity pci() const { return bursts.front().block.pci; }
};

/// Eight bursts in the first 5 ms half-frame (30 kHz Case C-like pattern:
/// start symbols {2,8} + 14n). beam_gains_db[boost_index] = boost_db.
SsbBurstSet schedule_burst_set(const CellIdentity& pci, uint32_t mib_bits,
                               int n_bursts, int boost_index, double boost_db);

/// First subcarrier of the SSB band when centered in the occupied band.
int ssb_first_subcarrier(const NumerologyConfig& num);

/// Add a block into a grid at (first_subcarrier, start_symbol), scaled by
/// 10^(gain_db/20).
void place_ssb(ResourceGrid& grid, const SsbBlock& block, int start_symbol,
               int first_subcarrier, double gain_db = 0.0);

}  // namespace jamcell
