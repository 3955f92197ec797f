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

#include <complex>
#include <span>
#include <vector>

#include "jamcell/fft.hpp"

namespace jamcell {

using dsp::cd;

/// OFDM numerology: normal cyclic prefix, FFT sized to the smallest power
/// of two that holds the occupied subcarriers.
struct NumerologyConfig {
    double scs_hz = 30e3;
    int n_rb = 51;
    int fft_size = 0;
    std::vector<int> cp_lengths;  // per symbol position within a slot (14)
    double sample_rate_hz = 0;
    int symbols_per_slot = 14;
    int slots_per_frame = 0;

    int n_subcarriers() const { return 12 * n_rb; }
    int samples_per_slot() const;
    /// Sample index of the start (CP included) of absolute symbol `sym`,
    /// counting from symbol 0 of slot 0.
    long symbol_start_sample(int sym) const;
    /// Sample index of the first useful (post-CP) sample of symbol `sym`.
    long symbol_useful_start(int sym) const;
};

/// scs in {15 kHz, 30 kHz}; n_rb >= 20 so the grid can host an SSB.
NumerologyConfig build_numerology(double scs_hz, int n_rb);

/// Complex symbol matrix, (12*n_rb) subcarriers x n_symbols.
/// Subcarrier 0 is the lowest frequency of the occupied band.
class ResourceGrid {
  public:
    ResourceGrid(NumerologyConfig numerology, int n_symbols);

    cd& at(int subcarrier, int symbol);
    const cd& at(int subcarrier, int symbol) const;

    int n_subcarriers() const { return numerology_.n_subcarriers(); }
    int n_symbols() const { return n_symbols_; }
    const NumerologyConfig& numerology() const { return numerology_; }

    double energy() const;

  private:
    NumerologyConfig numerology_;
    int n_symbols_;
    std::vector<cd> data_;  // subcarrier-major per symbol
};

enum class ModScheme { QPSK, QAM16, QAM64 };

int bits_per_symbol(ModScheme scheme);

/// Gray-mapped constellation points with unit average power.
/// bits.size() must be a multiple of bits_per_symbol(scheme).
std::vector<cd> modulate(std::span<const int> bits, ModScheme scheme);

/// Per symbol: occupied subcarriers centered in the FFT (no DC puncture),
/// unitary inverse transform, cyclic prefix prepended.
std::vector<cd> ofdm_modulate(const ResourceGrid& grid);

/// Exact inverse of ofdm_modulate when start_offset lands on the CP start of
/// symbol 0 of a slot. Demodulates as many complete symbols as are present.
ResourceGrid ofdm_demodulate(std::span<const cd> samples,
                             const NumerologyConfig& numerology,
                             long start_offset = 0);

/// 100 * sqrt(mean|rx - ref|^2 / mean|ref|^2).
double measure_evm_rms(std::span<const cd> rx, std::span<const cd> ref);

}  // namespace jamcell
