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
#include <cstddef>
#include <span>
#include <vector>

namespace jamcell::dsp {

using cd = std::complex<double>;

/// In-place radix-2 DIT FFT, unnormalized. x.size() must be a power of two.
void fft(std::vector<cd>& x);

/// In-place inverse FFT, scaled by 1/N.
void ifft(std::vector<cd>& x);

std::size_t next_pow2(std::size_t n);

/// Sliding cross-correlation via FFT:
///   out[lag] = sum_n x[lag + n] * conj(h[n]),  lag in [0, x.size() - 1].
/// Lags where h runs past the end of x correlate against implicit zeros.
std::vector<cd> correlate_fft(std::span<const cd> x, std::span<const cd> h);

}  // namespace jamcell::dsp
