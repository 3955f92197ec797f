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

#include "jamcell/waveform.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jamcell {

int NumerologyConfig::samples_per_slot() const {
    int total = 0;
    for (int cp : cp_lengths) total += cp + fft_size;
    return total;
}

long NumerologyConfig::symbol_start_sample(int sym) const {
    const int slot = sym / symbols_per_slot;
    long s = static_cast<long>(slot) * samples_per_slot();
    for (int l = 0; l < sym % symbols_per_slot; ++l)
        s += cp_lengths[l] + fft_size;
    return s;
}

long NumerologyConfig::symbol_useful_start(int sym) const {
    return symbol_start_sample(sym) + cp_lengths[sym % symbols_per_slot];
}

NumerologyConfig build_numerology(double scs_hz, int n_rb) {
    if (scs_hz != 15e3 && scs_hz != 30e3)
        throw std::invalid_argument("build_numerology: scs must be 15 or 30 kHz");
    if (n_rb < 20)
        throw std::invalid_argument("build_numerology: n_rb < 20 cannot host an SSB");

    NumerologyConfig num;
    num.scs_hz = scs_hz;
    num.n_rb = n_rb;
    num.fft_size = static_cast<int>(dsp::next_pow2(static_cast<size_t>(12 * n_rb)));
    num.sample_rate_hz = scs_hz * num.fft_size;
    num.slots_per_frame = scs_hz == 30e3 ? 20 : 10;

    // Normal CP scaled from the 2048-point reference; the first symbol of
    // each half-subframe carries the extended prefix.
    const int cp_short = 144 * num.fft_size / 2048;
    const int cp_extra = 16 * num.fft_size / 2048 * static_cast<int>(scs_hz / 15e3);
    num.cp_lengths.assign(14, cp_short);
    num.cp_lengths[0] = cp_short + cp_extra;
    if (scs_hz == 15e3) num.cp_lengths[7] = cp_short + cp_extra;
    return num;
}

ResourceGrid::ResourceGrid(NumerologyConfig numerology, int n_symbols)
    : numerology_(std::move(numerology)), n_symbols_(n_symbols) {
    if (n_symbols <= 0)
        throw std::invalid_argument("ResourceGrid: n_symbols must be positive");
    data_.assign(static_cast<size_t>(numerology_.n_subcarriers()) * n_symbols, cd{});
}

cd& ResourceGrid::at(int subcarrier, int symbol) {
    return data_[static_cast<size_t>(symbol) * numerology_.n_subcarriers() + subcarrier];
}

const cd& ResourceGrid::at(int subcarrier, int symbol) const {
    return data_[static_cast<size_t>(symbol) * numerology_.n_subcarriers() + subcarrier];
}

double ResourceGrid::energy() const {
    double e = 0.0;
    for (const auto& v : data_) e += std::norm(v);
    return e;
}

int bits_per_symbol(ModScheme scheme) {
    switch (scheme) {
        case ModScheme::QPSK: return 2;
        case ModScheme::QAM16: return 4;
        case ModScheme::QAM64: return 6;
    }
    throw std::invalid_argument("bits_per_symbol: unknown scheme");
}

std::vector<cd> modulate(std::span<const int> bits, ModScheme scheme) {
    const int bps = bits_per_symbol(scheme);
    if (bits.size() % bps != 0)
        throw std::invalid_argument("modulate: bit count not divisible by bits per symbol");

    std::vector<cd> out;
    out.reserve(bits.size() / bps);
    for (size_t i = 0; i < bits.size(); i += bps) {
        const int* b = &bits[i];
        double re = 0.0, im = 0.0;
        switch (scheme) {
            case ModScheme::QPSK:
                re = (1 - 2 * b[0]) * M_SQRT1_2;
                im = (1 - 2 * b[1]) * M_SQRT1_2;
                break;
            case ModScheme::QAM16:
                re = (1 - 2 * b[0]) * (2 - (1 - 2 * b[2])) / std::sqrt(10.0);
                im = (1 - 2 * b[1]) * (2 - (1 - 2 * b[3])) / std::sqrt(10.0);
                break;
            case ModScheme::QAM64:
                re = (1 - 2 * b[0]) * (4 - (1 - 2 * b[2]) * (2 - (1 - 2 * b[4]))) /
                     std::sqrt(42.0);
                im = (1 - 2 * b[1]) * (4 - (1 - 2 * b[3]) * (2 - (1 - 2 * b[5]))) /
                     std::sqrt(42.0);
                break;
        }
        out.emplace_back(re, im);
    }
    return out;
}

std::vector<cd> ofdm_modulate(const ResourceGrid& grid) {
    const auto& num = grid.numerology();
    const int n_sc = num.n_subcarriers();
    const int fft = num.fft_size;
    const double scale = std::sqrt(static_cast<double>(fft));  // unitary

    std::vector<cd> out;
    out.reserve(static_cast<size_t>(grid.n_symbols()) * (fft + num.cp_lengths[1]));
    std::vector<cd> x(fft);
    for (int l = 0; l < grid.n_symbols(); ++l) {
        std::fill(x.begin(), x.end(), cd{});
        for (int k = 0; k < n_sc; ++k) {
            int bin = k - n_sc / 2;
            if (bin < 0) bin += fft;
            x[bin] = grid.at(k, l);
        }
        dsp::ifft(x);
        for (auto& v : x) v *= scale;
        const int cp = num.cp_lengths[l % num.symbols_per_slot];
        out.insert(out.end(), x.end() - cp, x.end());
        out.insert(out.end(), x.begin(), x.end());
    }
    return out;
}

ResourceGrid ofdm_demodulate(std::span<const cd> samples,
                             const NumerologyConfig& num, long start_offset) {
    const int n_sc = num.n_subcarriers();
    const int fft = num.fft_size;
    if (start_offset < 0 || static_cast<size_t>(start_offset) > samples.size())
        throw std::invalid_argument("ofdm_demodulate: bad start offset");

    long pos = start_offset;
    int n_symbols = 0;
    {
        long p = pos;
        while (true) {
            const int cp = num.cp_lengths[n_symbols % num.symbols_per_slot];
            if (p + cp + fft > static_cast<long>(samples.size())) break;
            p += cp + fft;
            ++n_symbols;
        }
    }
    if (n_symbols == 0)
        throw std::invalid_argument("ofdm_demodulate: not enough samples for one symbol");

    ResourceGrid grid(num, n_symbols);
    const double scale = 1.0 / std::sqrt(static_cast<double>(fft));
    std::vector<cd> x(fft);
    for (int l = 0; l < n_symbols; ++l) {
        pos += num.cp_lengths[l % num.symbols_per_slot];
        std::copy(samples.begin() + pos, samples.begin() + pos + fft, x.begin());
        dsp::fft(x);
        for (int k = 0; k < n_sc; ++k) {
            int bin = k - n_sc / 2;
            if (bin < 0) bin += fft;
            grid.at(k, l) = x[bin] * scale;
        }
        pos += fft;
    }
    return grid;
}

double measure_evm_rms(std::span<const cd> rx, std::span<const cd> ref) {
    if (rx.empty() || ref.empty())
        throw std::invalid_argument("measure_evm_rms: empty input");
    if (rx.size() != ref.size())
        throw std::invalid_argument("measure_evm_rms: length mismatch");

    double err = 0.0, pwr = 0.0;
    for (size_t i = 0; i < rx.size(); ++i) {
        err += std::norm(rx[i] - ref[i]);
        pwr += std::norm(ref[i]);
    }
    if (pwr <= 0.0)
        throw std::invalid_argument("measure_evm_rms: zero reference power");
    return 100.0 * std::sqrt(err / pwr);
}

}  // namespace jamcell
