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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "jamcell/rng.hpp"
#include "jamcell/waveform.hpp"

using namespace jamcell;

namespace {

ResourceGrid random_grid(const NumerologyConfig& num, int n_symbols, Rng& rng) {
    ResourceGrid grid(num, n_symbols);
    for (int l = 0; l < n_symbols; ++l)
        for (int k = 0; k < num.n_subcarriers(); ++k)
            grid.at(k, l) = rng.cnormal();
    return grid;
}

double sample_energy(const std::vector<cd>& samples) {
    double e = 0.0;
    for (const auto& v : samples) e += std::norm(v);
    return e;
}

}  // namespace

TEST_CASE("numerology sizing") {
    const auto num = build_numerology(30e3, 51);
    CHECK(num.fft_size == 1024);
    CHECK(num.sample_rate_hz == doctest::Approx(30.72e6));
    CHECK(num.n_subcarriers() == 612);
    CHECK(num.slots_per_frame == 20);

    const auto small = build_numerology(30e3, 20);
    CHECK(small.fft_size == 256);
    CHECK(small.sample_rate_hz == doctest::Approx(7.68e6));

    CHECK_THROWS_AS(build_numerology(30e3, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_numerology(60e3, 51), std::invalid_argument);
}

TEST_CASE("numerology slot timing") {
    // slot duration must come out to exactly 0.5 ms at 30 kHz SCS
    const auto num = build_numerology(30e3, 51);
    CHECK(num.samples_per_slot() == 15360);
    CHECK(num.symbol_start_sample(0) == 0);
    CHECK(num.symbol_start_sample(14) == 15360);
    CHECK(num.symbol_useful_start(0) == num.cp_lengths[0]);
    // extended prefix only on the first symbol of the slot
    CHECK(num.cp_lengths[0] > num.cp_lengths[1]);
    for (int l = 1; l < 14; ++l) CHECK(num.cp_lengths[l] == num.cp_lengths[1]);
}

TEST_CASE("gray qpsk point") {
    const std::vector<int> bits{0, 0};
    const auto pts = modulate(bits, ModScheme::QPSK);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].real() == doctest::Approx(M_SQRT1_2));
    CHECK(pts[0].imag() == doctest::Approx(M_SQRT1_2));
}

TEST_CASE("constellations unit average power") {
    for (auto scheme : {ModScheme::QPSK, ModScheme::QAM16, ModScheme::QAM64}) {
        const int bps = bits_per_symbol(scheme);
        const int n_points = 1 << bps;
        double power = 0.0;
        for (int word = 0; word < n_points; ++word) {
            std::vector<int> bits(bps);
            for (int b = 0; b < bps; ++b) bits[b] = (word >> b) & 1;
            power += std::norm(modulate(bits, scheme)[0]);
        }
        CHECK(power / n_points == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("modulate rejects partial symbols") {
    const std::vector<int> one_bit{0};
    CHECK_THROWS_AS(modulate(one_bit, ModScheme::QPSK), std::invalid_argument);
}

TEST_CASE("ofdm zero grid") {
    const auto num = build_numerology(30e3, 20);
    ResourceGrid grid(num, 2);
    for (const auto& v : ofdm_modulate(grid)) CHECK(v == cd{});
}

TEST_CASE("single subcarrier is constant modulus and Parseval-consistent") {
    const auto num = build_numerology(30e3, 20);
    ResourceGrid grid(num, 1);
    grid.at(17, 0) = cd{1.0, 0.0};
    const auto samples = ofdm_modulate(grid);

    const double expected = 1.0 / num.fft_size;
    for (const auto& v : samples)
        CHECK(std::norm(v) == doctest::Approx(expected).epsilon(1e-9));

    // grid energy 1; time energy has the CP excess on top of the FFT window
    const double cp_ratio =
        static_cast<double>(num.cp_lengths[0] + num.fft_size) / num.fft_size;
    CHECK(sample_energy(samples) == doctest::Approx(cp_ratio).epsilon(1e-9));
}

TEST_CASE("round trip identity") {
    const auto num = build_numerology(30e3, 51);
    Rng rng(42);
    const auto grid = random_grid(num, 14, rng);
    const auto samples = ofdm_modulate(grid);
    const auto back = ofdm_demodulate(samples, num);
    REQUIRE(back.n_symbols() == 14);
    for (int l = 0; l < 14; ++l)
        for (int k = 0; k < num.n_subcarriers(); ++k)
            CHECK(std::abs(back.at(k, l) - grid.at(k, l)) <=
                  1e-9 * std::abs(grid.at(k, l)) + 1e-12);
}

TEST_CASE("Parseval energy conservation") {
    const auto num = build_numerology(30e3, 20);
    Rng rng(7);
    const auto grid = random_grid(num, 4, rng);
    const auto samples = ofdm_modulate(grid);

    // energy inside the FFT windows (CP excluded) must match the grid energy
    double window_energy = 0.0;
    for (int l = 0; l < 4; ++l) {
        const long u = num.symbol_useful_start(l);
        for (int i = 0; i < num.fft_size; ++i) window_energy += std::norm(samples[u + i]);
    }
    CHECK(window_energy == doctest::Approx(grid.energy()).epsilon(1e-9));
}

TEST_CASE("half-CP timing offset preserves magnitudes") {
    const auto num = build_numerology(30e3, 20);
    Rng rng(3);
    const auto grid = random_grid(num, 28, rng);
    const auto samples = ofdm_modulate(grid);

    const int shift = num.cp_lengths[1] / 2;
    const long offset = num.samples_per_slot() - shift;
    const auto tilted = ofdm_demodulate(samples, num, offset);
    REQUIRE(tilted.n_symbols() >= 14);
    for (int l = 0; l < 14; ++l)
        for (int k = 0; k < num.n_subcarriers(); ++k)
            CHECK(std::abs(tilted.at(k, l)) ==
                  doctest::Approx(std::abs(grid.at(k, 14 + l))).epsilon(1e-9));
}

TEST_CASE("demodulate rejects truncated input") {
    const auto num = build_numerology(30e3, 20);
    std::vector<cd> too_short(num.fft_size / 2);
    CHECK_THROWS_AS(ofdm_demodulate(too_short, num), std::invalid_argument);
}

TEST_CASE("evm basics") {
    const std::vector<cd> ref{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    CHECK(measure_evm_rms(ref, ref) == doctest::Approx(0.0));

    std::vector<cd> off = ref;
    for (auto& v : off) v += cd{0.1, 0.0};
    CHECK(measure_evm_rms(off, ref) == doctest::Approx(10.0).epsilon(1e-9));

    CHECK_THROWS_AS(measure_evm_rms(ref, std::vector<cd>{{1.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("evm of Gaussian noise matches closed form") {
    Rng rng(11);
    const int n = 20000;
    std::vector<cd> ref(n), rx(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> bits{rng.uniform_int(0, 1), rng.uniform_int(0, 1)};
        ref[i] = modulate(bits, ModScheme::QPSK)[0];
        rx[i] = ref[i] + 0.5 * rng.cnormal();  // variance 0.25
    }
    CHECK(measure_evm_rms(rx, ref) == doctest::Approx(50.0).epsilon(0.04));
}

TEST_CASE("evm scale invariance") {
    Rng rng(5);
    std::vector<cd> ref(128), rx(128);
    for (size_t i = 0; i < ref.size(); ++i) {
        ref[i] = rng.cnormal();
        rx[i] = ref[i] + 0.3 * rng.cnormal();
    }
    const double base = measure_evm_rms(rx, ref);
    const cd c{-1.3, 2.1};
    std::vector<cd> ref2 = ref, rx2 = rx;
    for (auto& v : ref2) v *= c;
    for (auto& v : rx2) v *= c;
    CHECK(measure_evm_rms(rx2, ref2) == doctest::Approx(base).epsilon(1e-9));
}
