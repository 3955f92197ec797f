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
#include <algorithm>
#include <functional>

#include "doctest.h"
#include "jamcell/channel.hpp"
#include "jamcell/linklevel.hpp"
#include "jamcell/receiver.hpp"

using namespace jamcell;

namespace {

// One clean SSB burst in an otherwise empty capture.
std::vector<cd> clean_ssb_capture(const NumerologyConfig& num, int pci_value,
                                  int start_symbol) {
    const auto pci = CellIdentity::from_pci(pci_value);
    ResourceGrid grid(num, 14);
    place_ssb(grid, assemble_ssb(pci, 0, 0xA5C3F0), start_symbol,
              ssb_first_subcarrier(num));
    return ofdm_modulate(grid);
}

SsbGrid noisy_block_grid(const CellIdentity& pci, int ssb_index, double sigma,
                         Rng& rng, uint32_t mib = 0xA5C3F0) {
    const auto block = assemble_ssb(pci, ssb_index, mib);
    SsbGrid grid;
    for (int l = 0; l < kSsbSymbols; ++l)
        for (int k = 0; k < kSsbSubcarriers; ++k)
            grid.at(k, l) = block.at(k, l) + sigma * rng.cnormal();
    return grid;
}

}  // namespace

TEST_CASE("clean pss detection is exact") {
    const auto num = build_numerology(30e3, 51);
    for (int pci : {0, 350, 1007}) {
        const auto samples = clean_ssb_capture(num, pci, 2);
        const auto det = detect_pss(samples, num);
        CHECK(det.detected);
        CHECK(det.n_id_2 == pci % 3);
        CHECK(det.timing_offset == num.symbol_useful_start(2));
    }
    std::vector<cd> short_capture(16);
    CHECK_THROWS_AS(detect_pss(short_capture, num), std::invalid_argument);
}

TEST_CASE("pure-noise false alarm rate is at most 1 percent") {
    const auto num = build_numerology(30e3, 51);
    Rng rng(23);
    int false_alarms = 0;
    const int trials = 1000;
    std::vector<cd> noise(4096);
    for (int t = 0; t < trials; ++t) {
        for (auto& v : noise) v = rng.cnormal();
        if (detect_pss(noise, num).detected) ++false_alarms;
    }
    CHECK(false_alarms <= 10);
}

TEST_CASE("denial-power barrage defeats pss detection") {
    // jammer received power set by the minimum-denial relation at 0 dB SJNR,
    // then raised another 10 dB
    LinkScenario sc;
    sc.n_slots = 2;
    const double d_sig = std::hypot(60.0, 60.0);
    const double p_sig_re = sc.gnb_power_dbm - lin_to_db(612.0) -
                            fspl_db(sc.carrier_hz, d_sig);
    const double p_n_re = noise_power_re_dbm(sc.scs_hz, sc.noise_figure_db);
    const double p_min_re =
        min_jam_re_power(dbm_to_mw(p_sig_re), 1.0, dbm_to_mw(p_n_re));
    const double total_rx_dbm = mw_to_dbm(612.0 * p_min_re) + 10.0;

    JammerSpec jam;
    jam.kind = JammerKind::BARRAGE;
    jam.position_m = {100.0, 100.0};
    const double d_jam = std::hypot(100.0 - 60.0, 100.0 - 60.0);
    jam.tx_power_dbm = total_rx_dbm + fspl_db(sc.carrier_hz, d_jam);
    sc.jammers.push_back(jam);

    int detections = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        sc.seed = 1000 + t;
        if (run_ssb_attack(sc, false, true).pss.detected) ++detections;
    }
    CHECK(detections < trials / 2);
}

TEST_CASE("ssb grid extraction is the transmit block") {
    const auto num = build_numerology(30e3, 51);
    const auto pci = CellIdentity::from_pci(350);
    const auto block = assemble_ssb(pci, 0, 0xA5C3F0);
    const auto samples = clean_ssb_capture(num, 350, 2);
    const auto grid = extract_ssb_grid(samples, num, num.symbol_useful_start(2));
    for (int l = 0; l < kSsbSymbols; ++l)
        for (int k = 0; k < kSsbSubcarriers; ++k)
            CHECK(std::abs(grid.at(k, l) - block.at(k, l)) < 1e-9);

    CHECK_THROWS_AS(
        extract_ssb_grid(samples, num,
                         static_cast<long>(samples.size()) - num.fft_size),
        std::invalid_argument);
}

TEST_CASE("sss identification on the default identity") {
    Rng rng(3);
    const auto pci = CellIdentity::from_pci(350);
    const auto grid = noisy_block_grid(pci, 0, 0.0, rng);
    const auto det = detect_sss(grid, pci.n_id_2);
    CHECK(det.n_id_1 == 116);  // 350 = 3*116 + 2

    std::vector<double> scores = det.scores;
    std::sort(scores.begin(), scores.end(), std::greater<>());
    CHECK(scores[0] >= 2.0 * scores[1]);
}

TEST_CASE("sss under targeted jamming loses its margin") {
    Rng rng(4);
    const auto pci = CellIdentity::from_pci(350);
    auto grid = noisy_block_grid(pci, 0, 0.0, rng);
    for (int n = 0; n < kPssLength; ++n)
        grid.at(kPssFirstSubcarrier + n, 2) += 6.0 * rng.cnormal();

    const auto det = detect_sss(grid, pci.n_id_2);
    std::vector<double> scores = det.scores;
    std::sort(scores.begin(), scores.end(), std::greater<>());
    const bool degraded = det.n_id_1 != 116 || scores[0] < 1.2 * scores[1];
    CHECK(degraded);
}

TEST_CASE("ssb index identification round trip") {
    Rng rng(5);
    const auto pci = CellIdentity::from_pci(701);
    for (int idx = 0; idx < kSsbBursts; ++idx) {
        const auto grid = noisy_block_grid(pci, idx, 0.05, rng);
        CHECK(identify_ssb_index(grid, pci) == idx);
    }
}

TEST_CASE("dmrs sjnr estimator calibration") {
    const auto pci = CellIdentity::from_pci(350);
    Rng rng(6);
    for (double snr_db : {10.0, 20.0}) {
        const double sigma = std::sqrt(db_to_lin(-snr_db));
        double err_sum = 0.0;
        const int bursts = 100;
        for (int b = 0; b < bursts; ++b) {
            const auto grid = noisy_block_grid(pci, b % kSsbBursts, sigma, rng);
            err_sum += estimate_dmrs_sjnr(grid, pci, b % kSsbBursts) - snr_db;
        }
        CHECK(std::abs(err_sum / bursts) <= 1.5);
    }
}

TEST_CASE("noise-free sjnr estimate hits the ceiling") {
    Rng rng(7);
    const auto pci = CellIdentity::from_pci(350);
    const auto grid = noisy_block_grid(pci, 0, 0.0, rng);
    CHECK(estimate_dmrs_sjnr(grid, pci, 0) >= 40.0);
}

TEST_CASE("boosted burst gains its beam advantage in sjnr") {
    LinkScenario sc;
    sc.boost_index = 2;
    sc.boost_db = 9.0;
    double boosted = 0.0, others = 0.0;
    int n_boosted = 0, n_others = 0;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        sc.seed = seed;
        const auto res = run_ssb_attack(sc);
        for (const auto& b : res.bursts) {
            if (b.ssb_index == 2) {
                boosted += b.dmrs_sjnr_db;
                ++n_boosted;
            } else {
                others += b.dmrs_sjnr_db;
                ++n_others;
            }
        }
    }
    REQUIRE(n_boosted > 0);
    const double gap = boosted / n_boosted - others / n_others;
    CHECK(gap == doctest::Approx(9.0).epsilon(2.0 / 9.0));
}

TEST_CASE("pbch decode thresholds") {
    const auto pci = CellIdentity::from_pci(350);
    Rng rng(8);

    const auto clean = noisy_block_grid(pci, 0, 0.0, rng);
    const auto d0 = decode_pbch(clean, pci, 0, 0xA5C3F0);
    CHECK(d0.evm_rms_percent < 1.0);
    CHECK(d0.mib_decodable);

    // noise levels reproducing the two reference EVM outcomes around the
    // 35 % decodability threshold
    const auto bad = noisy_block_grid(pci, 0, 0.5159, rng);
    const auto db = decode_pbch(bad, pci, 0, 0xA5C3F0);
    CHECK(db.evm_rms_percent > 45.0);
    CHECK(!db.mib_decodable);

    const auto ok = noisy_block_grid(pci, 0, 0.2336, rng);
    const auto dk = decode_pbch(ok, pci, 0, 0xA5C3F0);
    CHECK(dk.evm_rms_percent < 30.0);
    CHECK(dk.mib_decodable);
}

TEST_CASE("pbch evm shrinks monotonically as jamming weakens") {
    const auto pci = CellIdentity::from_pci(350);
    const double sigmas[] = {1.6, 0.8, 0.4, 0.2, 0.1};
    double prev = 1e9;
    Rng rng(9);
    for (double sigma : sigmas) {
        double evm = 0.0;
        for (int seed = 0; seed < 50; ++seed) {
            const auto grid = noisy_block_grid(pci, 0, sigma, rng);
            evm += decode_pbch(grid, pci, 0, 0xA5C3F0).evm_rms_percent;
        }
        evm /= 50.0;
        CHECK(evm < prev);
        prev = evm;
    }
}

TEST_CASE("pdsch equalizer and evm") {
    Rng rng(10);
    std::vector<cd> ref(256), rx(256);
    const cd h{0.6, -0.8};
    for (size_t i = 0; i < ref.size(); ++i) {
        ref[i] = rng.cnormal();
        rx[i] = h * ref[i];
    }
    CHECK(pdsch_evm(rx, ref, h) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(pdsch_evm(rx, ref, cd{}), std::invalid_argument);
}

TEST_CASE("link-level pdsch evm matches the awgn closed form") {
    LinkScenario sc;
    sc.n_slots = 2;
    double evm = 0.0;
    const int seeds = 10;
    for (uint64_t s = 1; s <= seeds; ++s) {
        sc.seed = s;
        evm += run_ssb_attack(sc).pdsch_evm_rms;
    }
    evm /= seeds;

    const double p_sig_re = sc.gnb_power_dbm - lin_to_db(612.0) -
                            fspl_db(sc.carrier_hz, std::hypot(60.0, 60.0));
    const double p_n_re = noise_power_re_dbm(sc.scs_hz, sc.noise_figure_db);
    const double expected = 100.0 * std::sqrt(db_to_lin(p_n_re - p_sig_re));
    CHECK(std::abs(evm - expected) < 2.0);
}

TEST_CASE("logistic bler curve") {
    McsEntry mcs{"qpsk-r12", ModScheme::QPSK, 0.5, 4.0, 2.0};
    CHECK(sinr_to_bler(4.0, mcs) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sinr_to_bler(14.0, mcs) < 1e-8);
    double prev = 1.1;
    for (double s = -10.0; s <= 20.0; s += 0.5) {
        const double b = sinr_to_bler(s, mcs);
        CHECK(b <= prev);
        prev = b;
    }
}
