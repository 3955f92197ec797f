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

#include "jamcell/ssb.hpp"

#include <cmath>
#include <stdexcept>

namespace jamcell {

CellIdentity CellIdentity::from_pci(int pci) {
    if (pci < 0 || pci > 1007)
        throw std::invalid_argument("CellIdentity: pci out of range");
    return {pci / 3, pci % 3, pci};
}

CellIdentity CellIdentity::from_parts(int n_id_1, int n_id_2) {
    if (n_id_1 < 0 || n_id_1 > 335)
        throw std::invalid_argument("CellIdentity: n_id_1 out of range");
    if (n_id_2 < 0 || n_id_2 > 2)
        throw std::invalid_argument("CellIdentity: n_id_2 out of range");
    return {n_id_1, n_id_2, 3 * n_id_1 + n_id_2};
}

std::array<double, kPssLength> pss_sequence(int n_id_2) {
    if (n_id_2 < 0 || n_id_2 > 2)
        throw std::invalid_argument("pss_sequence: n_id_2 out of range");

    int x[kPssLength] = {0, 1, 1, 0, 1, 1, 1};
    for (int i = 0; i + 7 < kPssLength; ++i) x[i + 7] = (x[i + 4] + x[i]) % 2;

    std::array<double, kPssLength> d{};
    for (int n = 0; n < kPssLength; ++n)
        d[n] = 1.0 - 2.0 * x[(n + 43 * n_id_2) % kPssLength];
    return d;
}

std::array<double, kPssLength> sss_sequence(int n_id_1, int n_id_2) {
    if (n_id_1 < 0 || n_id_1 > 335)
        throw std::invalid_argument("sss_sequence: n_id_1 out of range");
    if (n_id_2 < 0 || n_id_2 > 2)
        throw std::invalid_argument("sss_sequence: n_id_2 out of range");

    int x0[kPssLength] = {1, 0, 0, 0, 0, 0, 0};
    int x1[kPssLength] = {1, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i + 7 < kPssLength; ++i) {
        x0[i + 7] = (x0[i + 4] + x0[i]) % 2;
        x1[i + 7] = (x1[i + 1] + x1[i]) % 2;
    }
    const int m0 = 15 * (n_id_1 / 112) + 5 * n_id_2;
    const int m1 = n_id_1 % 112;

    std::array<double, kPssLength> d{};
    for (int n = 0; n < kPssLength; ++n)
        d[n] = (1.0 - 2.0 * x0[(n + m0) % kPssLength]) *
               (1.0 - 2.0 * x1[(n + m1) % kPssLength]);
    return d;
}

std::vector<int> gold_sequence(uint32_t c_init, int len) {
    constexpr int kNc = 1600;
    const int total = len + kNc + 31;
    std::vector<int> x1(total), x2(total);
    x1[0] = 1;
    for (int i = 0; i < 31; ++i) x2[i] = (c_init >> i) & 1;
    for (int i = 0; i + 31 < total; ++i) {
        x1[i + 31] = (x1[i + 3] + x1[i]) % 2;
        x2[i + 31] = (x2[i + 3] + x2[i + 2] + x2[i + 1] + x2[i]) % 2;
    }
    std::vector<int> c(len);
    for (int n = 0; n < len; ++n) c[n] = (x1[n + kNc] + x2[n + kNc]) % 2;
    return c;
}

std::vector<cd> pbch_dmrs(const CellIdentity& pci, int ssb_index) {
    if (ssb_index < 0 || ssb_index >= kSsbBursts)
        throw std::invalid_argument("pbch_dmrs: ssb_index out of range");

    const uint32_t i_bar = static_cast<uint32_t>(ssb_index);  // L = 8
    const uint32_t c_init = (1u << 11) * (i_bar + 1) * (pci.pci / 4 + 1) +
                            (1u << 6) * (i_bar + 1) + (pci.pci % 4);
    const auto c = gold_sequence(c_init, 2 * 144);

    std::vector<cd> r(144);
    for (int m = 0; m < 144; ++m)
        r[m] = cd((1 - 2 * c[2 * m]) * M_SQRT1_2, (1 - 2 * c[2 * m + 1]) * M_SQRT1_2);
    return r;
}

double SsbBlock::energy() const {
    double e = 0.0;
    for (const auto& v : symbols) e += std::norm(v);
    return e;
}

std::vector<int> pbch_dmrs_subcarriers(int symbol, int v) {
    std::vector<int> sc;
    if (symbol == 1 || symbol == 3) {
        for (int k = v; k < kSsbSubcarriers; k += 4) sc.push_back(k);
    } else if (symbol == 2) {
        for (int k = v; k < 48; k += 4) sc.push_back(k);
        for (int k = 192 + v; k < kSsbSubcarriers; k += 4) sc.push_back(k);
    } else {
        throw std::invalid_argument("pbch_dmrs_subcarriers: symbol must be 1..3");
    }
    return sc;
}

std::vector<int> pbch_data_subcarriers(int symbol, int v) {
    std::vector<int> sc;
    auto keep = [v](int k) { return k % 4 != v; };
    if (symbol == 1 || symbol == 3) {
        for (int k = 0; k < kSsbSubcarriers; ++k)
            if (keep(k)) sc.push_back(k);
    } else if (symbol == 2) {
        for (int k = 0; k < 48; ++k)
            if (keep(k)) sc.push_back(k);
        for (int k = 192; k < kSsbSubcarriers; ++k)
            if (keep(k)) sc.push_back(k);
    } else {
        throw std::invalid_argument("pbch_data_subcarriers: symbol must be 1..3");
    }
    return sc;
}

SsbBlock assemble_ssb(const CellIdentity& pci, int ssb_index, uint32_t mib_bits) {
    SsbBlock block;
    block.pci = pci;
    block.ssb_index = ssb_index;
    block.mib_bits = mib_bits & 0xFFFFFFu;

    const auto pss = pss_sequence(pci.n_id_2);
    const auto sss = sss_sequence(pci.n_id_1, pci.n_id_2);
    for (int n = 0; n < kPssLength; ++n) {
        block.at(kPssFirstSubcarrier + n, 0) = pss[n];
        block.at(kPssFirstSubcarrier + n, 2) = sss[n];
    }

    const int v = pci.pci % 4;
    const auto dmrs = pbch_dmrs(pci, ssb_index);
    size_t m = 0;
    for (int sym = 1; sym <= 3; ++sym)
        for (int k : pbch_dmrs_subcarriers(sym, v)) block.at(k, sym) = dmrs[m++];

    // 432 data REs carry the tiled, Gold-scrambled 24-bit payload.
    const auto c = gold_sequence(static_cast<uint32_t>(pci.pci), 864);
    std::vector<int> bits(864);
    for (int i = 0; i < 864; ++i)
        bits[i] = (static_cast<int>((block.mib_bits >> (i % 24)) & 1u) + c[i]) % 2;
    const auto payload = modulate(bits, ModScheme::QPSK);
    size_t p = 0;
    for (int sym = 1; sym <= 3; ++sym)
        for (int k : pbch_data_subcarriers(sym, v)) block.at(k, sym) = payload[p++];

    return block;
}

SsbBurstSet schedule_burst_set(const CellIdentity& pci, uint32_t mib_bits,
                               int n_bursts, int boost_index, double boost_db) {
    if (n_bursts != kSsbBursts)
        throw std::invalid_argument("schedule_burst_set: n_bursts must be 8");
    if (boost_index < 0 || boost_index >= kSsbBursts)
        throw std::invalid_argument("schedule_burst_set: invalid boost index");

    // 30 kHz pattern: candidate start symbols {2, 8} + 14n.
    SsbBurstSet set;
    for (int i = 0; i < kSsbBursts; ++i) {
        const int start = (i % 2 == 0 ? 2 : 8) + 14 * (i / 2);
        set.bursts.push_back({assemble_ssb(pci, i, mib_bits), start});
    }
    set.beam_gains_db[boost_index] = boost_db;
    return set;
}

int ssb_first_subcarrier(const NumerologyConfig& num) {
    return (num.n_subcarriers() - kSsbSubcarriers) / 2;
}

void place_ssb(ResourceGrid& grid, const SsbBlock& block, int start_symbol,
               int first_subcarrier, double gain_db) {
    const double amp = std::pow(10.0, gain_db / 20.0);
    for (int l = 0; l < kSsbSymbols; ++l)
        for (int k = 0; k < kSsbSubcarriers; ++k)
            grid.at(first_subcarrier + k, start_symbol + l) += amp * block.at(k, l);
}

}  // namespace jamcell
