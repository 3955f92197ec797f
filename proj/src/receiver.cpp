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

#include "jamcell/receiver.hpp"

#include <algorithm>

#include "jamcell/channel.hpp"
#include <cmath>
#include <stdexcept>

namespace jamcell {

std::vector<cd> pss_replica(const NumerologyConfig& num, int n_id_2) {
    const int fft = num.fft_size;
    const int n_sc = num.n_subcarriers();
    const int first = ssb_first_subcarrier(num) + kPssFirstSubcarrier;
    const auto pss = pss_sequence(n_id_2);

    std::vector<cd> x(fft, cd{});
    for (int n = 0; n < kPssLength; ++n) {
        int bin = first + n - n_sc / 2;
        if (bin < 0) bin += fft;
        x[bin] = pss[n];
    }
    dsp::ifft(x);
    const double scale = std::sqrt(static_cast<double>(fft));
    for (auto& v : x) v *= scale;
    return x;
}

namespace {

// Median of |corr| over the lags trailing the peak, (peak + excl, peak + w].
// The window looks forward only: a candidate PSS peak sits at the head of its
// burst, so the following symbols carry the burst (and anything targeting it)
// while the lags before it may be idle spectrum.
double local_floor(const std::vector<double>& mag, long peak, long w, long excl) {
    const long lo = std::min<long>(static_cast<long>(mag.size()) - 1, peak + excl + 1);
    const long hi = std::min<long>(static_cast<long>(mag.size()) - 1, peak + w);
    std::vector<double> window;
    window.reserve(hi - lo + 1);
    for (long i = lo; i <= hi; ++i)
        if (std::abs(i - peak) > excl) window.push_back(mag[i]);
    if (window.size() < 32) {
        // peak at the capture tail: fall back to the leading side
        for (long i = std::max<long>(0, peak - w); i < peak - excl; ++i)
            window.push_back(mag[i]);
    }
    if (window.empty()) return 0.0;
    const size_t mid = window.size() / 2;
    std::nth_element(window.begin(), window.begin() + mid, window.end());
    return window[mid];
}

}  // namespace

PssDetection detect_pss(std::span<const cd> samples, const NumerologyConfig& num,
                        double threshold) {
    if (samples.size() < static_cast<size_t>(num.fft_size))
        throw std::invalid_argument("detect_pss: capture shorter than one replica");

    PssDetection best;
    std::vector<double> best_mag;
    for (int cand = 0; cand < 3; ++cand) {
        const auto replica = pss_replica(num, cand);
        const auto corr = dsp::correlate_fft(samples, replica);
        std::vector<double> mag(corr.size());
        for (size_t i = 0; i < corr.size(); ++i) mag[i] = std::abs(corr[i]);
        const auto it = std::max_element(mag.begin(), mag.end());
        const double peak = *it;
        if (peak > best.peak_metric) {  // metric filled in below; compare peaks
            best.n_id_2 = cand;
            best.timing_offset = static_cast<long>(it - mag.begin());
            best.peak_metric = peak;
            best_mag = std::move(mag);
        }
    }

    const long w = 2L * (num.fft_size + num.cp_lengths[1]);
    const long excl = 64;
    const double floor = local_floor(best_mag, best.timing_offset, w, excl);
    best.peak_metric = floor > 0.0 ? best.peak_metric / floor : 1e12;
    best.detected = best.peak_metric >= threshold;
    return best;
}

std::vector<double> pss_correlation_profile(std::span<const cd> samples,
                                            const NumerologyConfig& num,
                                            int n_id_2) {
    const auto corr = dsp::correlate_fft(samples, pss_replica(num, n_id_2));
    std::vector<double> mag(corr.size());
    for (size_t i = 0; i < corr.size(); ++i) mag[i] = std::abs(corr[i]);
    return mag;
}

SsbGrid extract_ssb_grid(std::span<const cd> samples, const NumerologyConfig& num,
                         long pss_useful_start) {
    const int fft = num.fft_size;
    const int n_sc = num.n_subcarriers();
    const int first_sc = ssb_first_subcarrier(num);
    const int stride = fft + num.cp_lengths[1];  // SSB symbols all use short CP

    if (pss_useful_start < 0 ||
        pss_useful_start + 3L * stride + fft > static_cast<long>(samples.size()))
        throw std::invalid_argument("extract_ssb_grid: SSB not fully inside capture");

    SsbGrid grid;
    const double scale = 1.0 / std::sqrt(static_cast<double>(fft));
    std::vector<cd> x(fft);
    for (int l = 0; l < kSsbSymbols; ++l) {
        const long start = pss_useful_start + static_cast<long>(l) * stride;
        std::copy(samples.begin() + start, samples.begin() + start + fft, x.begin());
        dsp::fft(x);
        for (int k = 0; k < kSsbSubcarriers; ++k) {
            int bin = first_sc + k - n_sc / 2;
            if (bin < 0) bin += fft;
            grid.at(k, l) = x[bin] * scale;
        }
    }
    return grid;
}

SssDetection detect_sss(const SsbGrid& grid, int n_id_2) {
    SssDetection det;
    det.scores.resize(336);
    double best = -1.0;
    for (int n1 = 0; n1 < 336; ++n1) {
        const auto cand = sss_sequence(n1, n_id_2);
        cd acc{};
        for (int n = 0; n < kPssLength; ++n)
            acc += grid.at(kPssFirstSubcarrier + n, 2) * cand[n];
        det.scores[n1] = std::abs(acc);
        if (det.scores[n1] > best) {
            best = det.scores[n1];
            det.n_id_1 = n1;
        }
    }
    return det;
}

int identify_ssb_index(const SsbGrid& grid, const CellIdentity& pci) {
    const int v = pci.pci % 4;
    int best_idx = 0;
    double best = -1.0;
    for (int idx = 0; idx < kSsbBursts; ++idx) {
        const auto dmrs = pbch_dmrs(pci, idx);
        cd acc{};
        size_t m = 0;
        for (int sym = 1; sym <= 3; ++sym)
            for (int k : pbch_dmrs_subcarriers(sym, v))
                acc += grid.at(k, sym) * std::conj(dmrs[m++]);
        if (std::abs(acc) > best) {
            best = std::abs(acc);
            best_idx = idx;
        }
    }
    return best_idx;
}

std::vector<cd> dmrs_channel_profile(const SsbGrid& grid, const CellIdentity& pci,
                                     int ssb_index) {
    const int v = pci.pci % 4;
    const auto dmrs = pbch_dmrs(pci, ssb_index);

    // LS estimates at pilot subcarriers, averaged over the symbols where a
    // given subcarrier carries a pilot.
    std::vector<cd> acc(kSsbSubcarriers, cd{});
    std::vector<int> cnt(kSsbSubcarriers, 0);
    size_t m = 0;
    for (int sym = 1; sym <= 3; ++sym)
        for (int k : pbch_dmrs_subcarriers(sym, v)) {
            acc[k] += grid.at(k, sym) * std::conj(dmrs[m++]);
            ++cnt[k];
        }

    std::vector<int> pilots;
    for (int k = 0; k < kSsbSubcarriers; ++k)
        if (cnt[k] > 0) {
            acc[k] /= static_cast<double>(cnt[k]);
            pilots.push_back(k);
        }

    std::vector<cd> h(kSsbSubcarriers);
    for (int k = 0; k < kSsbSubcarriers; ++k) {
        const auto hi = std::lower_bound(pilots.begin(), pilots.end(), k);
        if (hi == pilots.begin()) {
            h[k] = acc[pilots.front()];
        } else if (hi == pilots.end()) {
            h[k] = acc[pilots.back()];
        } else {
            const int kr = *hi;
            const int kl = *(hi - 1);
            const double t = static_cast<double>(k - kl) / (kr - kl);
            h[k] = acc[kl] * (1.0 - t) + acc[kr] * t;
        }
    }
    return h;
}

double estimate_dmrs_sjnr(const SsbGrid& grid, const CellIdentity& pci,
                          int ssb_index) {
    const int v = pci.pci % 4;
    const auto dmrs = pbch_dmrs(pci, ssb_index);

    // Flat per-burst estimate: scalar LS over the 144 pilots.
    cd h{};
    size_t m = 0;
    std::vector<cd> rx(144), ref(144);
    for (int sym = 1; sym <= 3; ++sym)
        for (int k : pbch_dmrs_subcarriers(sym, v)) {
            rx[m] = grid.at(k, sym);
            ref[m] = dmrs[m];
            h += rx[m] * std::conj(ref[m]);
            ++m;
        }
    const double n = static_cast<double>(m);
    h /= n;

    double resid = 0.0;
    for (size_t i = 0; i < m; ++i) resid += std::norm(rx[i] - h * ref[i]);
    resid /= n;
    const double noise = resid * n / (n - 1.0);  // unbiased
    double sig = std::norm(h) - noise / n;       // remove estimator self-noise
    sig = std::max(sig, 1e-30);
    const double denom = std::max(noise, sig * 1e-8);  // estimator ceiling
    return lin_to_db(sig / denom);
}

PbchDecode decode_pbch(const SsbGrid& grid, const CellIdentity& pci,
                       int ssb_index, uint32_t mib_bits, double evm_threshold,
                       std::vector<cd>* constellation) {
    const auto h = dmrs_channel_profile(grid, pci, ssb_index);
    const auto tx = assemble_ssb(pci, ssb_index, mib_bits);
    const int v = pci.pci % 4;

    std::vector<cd> eq, ref;
    for (int sym = 1; sym <= 3; ++sym)
        for (int k : pbch_data_subcarriers(sym, v)) {
            const cd hk = std::norm(h[k]) > 0.0 ? h[k] : cd{1e-12, 0.0};
            eq.push_back(grid.at(k, sym) / hk);
            ref.push_back(tx.at(k, sym));
        }
    if (constellation) *constellation = eq;

    PbchDecode out;
    out.evm_rms_percent = measure_evm_rms(eq, ref);
    out.mib_decodable = out.evm_rms_percent <= evm_threshold;
    return out;
}

double pss_evm_rms(const SsbGrid& grid, const CellIdentity& pci, int ssb_index) {
    const auto h = dmrs_channel_profile(grid, pci, ssb_index);
    const auto pss = pss_sequence(pci.n_id_2);

    std::vector<cd> eq(kPssLength), ref(kPssLength);
    for (int n = 0; n < kPssLength; ++n) {
        const int k = kPssFirstSubcarrier + n;
        const cd hk = std::norm(h[k]) > 0.0 ? h[k] : cd{1e-12, 0.0};
        eq[n] = grid.at(k, 0) / hk;
        ref[n] = pss[n];
    }
    return measure_evm_rms(eq, ref);
}

double pdsch_evm(std::span<const cd> rx, std::span<const cd> ref,
                 cd channel_estimate, std::vector<cd>* constellation) {
    if (std::norm(channel_estimate) == 0.0)
        throw std::invalid_argument("pdsch_evm: zero channel estimate");
    std::vector<cd> eq(rx.size());
    for (size_t i = 0; i < rx.size(); ++i) eq[i] = rx[i] / channel_estimate;
    if (constellation) *constellation = eq;
    return measure_evm_rms(eq, ref);
}

double sinr_to_bler(double sinr_db, const McsEntry& mcs) {
    return 1.0 / (1.0 + std::exp(mcs.logistic_slope *
                                 (sinr_db - mcs.sinr_threshold_db)));
}

}  // namespace jamcell
