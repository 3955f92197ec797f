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

#include "jamcell/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace jamcell::dsp {

namespace {

void fft_core(std::vector<cd>& x, bool inverse) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = x[i + k];
                const cd v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

void fft(std::vector<cd>& x) { fft_core(x, false); }

void ifft(std::vector<cd>& x) {
    fft_core(x, true);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& v : x) v *= inv;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<cd> correlate_fft(std::span<const cd> x, std::span<const cd> h) {
    if (x.empty() || h.empty())
        throw std::invalid_argument("correlate_fft: empty input");
    const std::size_t n = next_pow2(x.size() + h.size());
    std::vector<cd> fx(n), fh(n);
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = x[i];
    for (std::size_t i = 0; i < h.size(); ++i) fh[i] = h[i];
    fft(fx);
    fft(fh);
    for (std::size_t i = 0; i < n; ++i) fx[i] *= std::conj(fh[i]);
    ifft(fx);
    fx.resize(x.size());
    return fx;
}

}  // namespace jamcell::dsp
