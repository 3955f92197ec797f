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

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace jamcell {

/// Deterministic random stream (xoshiro256** seeded via splitmix64).
/// Every simulation entity owns its own stream; sequences are stable
/// across platforms, unlike the std <random> distributions.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t z = seed + 0x9e3779b97f4a7c15ull;
        for (auto& s : s_) {
            z += 0x9e3779b97f4a7c15ull;
            uint64_t x = z;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            s = x ^ (x >> 31);
        }
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * M_PI * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly symmetric complex normal, unit variance.
    std::complex<double> cnormal() {
        return {normal() * M_SQRT1_2, normal() * M_SQRT1_2};
    }

    /// Draw an index from a normalized pmf by inverse CDF.
    int sample_pmf(std::span<const double> pmf) {
        if (pmf.empty()) throw std::invalid_argument("sample_pmf: empty pmf");
        const double u = uniform();
        double acc = 0.0;
        for (size_t i = 0; i < pmf.size(); ++i) {
            acc += pmf[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(pmf.size()) - 1;
    }

    /// Derived independent stream for a sub-entity.
    Rng fork(uint64_t stream) {
        return Rng(next_u64() ^ (stream * 0x9e3779b97f4a7c15ull + 0x7f4a7c15ull));
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace jamcell
