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

#include "jamcell/linklevel.hpp"

#include <cmath>
#include <stdexcept>

namespace jamcell {

namespace {

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

void convolve_per_slot(std::vector<cd>& samples, const NumerologyConfig& num,
                       const FadingProfile& profile, Rng& rng) {
    const int slot_len = num.samples_per_slot();
    for (size_t start = 0; start < samples.size(); start += slot_len) {
        const size_t len = std::min<size_t>(slot_len, samples.size() - start);
        const auto ch = realize_fading(profile, num, rng);
        const auto out = apply_channel({samples.data() + start, len}, ch);
        std::copy(out.begin(), out.end(), samples.begin() + start);
    }
}

}  // namespace

LinkResult run_ssb_attack(const LinkScenario& sc, bool collect_dumps,
                          bool detect_only) {
    const auto num = build_numerology(sc.scs_hz, sc.n_rb);
    const auto pci = CellIdentity::from_pci(sc.pci);
    const int n_symbols = sc.n_slots * num.symbols_per_slot;
    const int n_sc = num.n_subcarriers();
    const int first_sc = ssb_first_subcarrier(num);

    Rng rng(sc.seed);
    Rng data_rng = rng.fork(1);
    Rng noise_rng = rng.fork(2);
    Rng fade_rng = rng.fork(3);

    // --- transmit grid: burst set + 16-QAM PDSCH everywhere else ---
    auto burst_set = schedule_burst_set(pci, sc.mib_bits, kSsbBursts,
                                        sc.boost_index, sc.boost_db);
    ResourceGrid grid(num, n_symbols);
    std::vector<int> sent_bursts;
    for (size_t i = 0; i < burst_set.bursts.size(); ++i) {
        const auto& burst = burst_set.bursts[i];
        if (burst.start_symbol + kSsbSymbols > n_symbols) continue;
        place_ssb(grid, burst.block, burst.start_symbol, first_sc,
                  burst_set.beam_gains_db[i]);
        sent_bursts.push_back(static_cast<int>(i));
    }
    if (sent_bursts.empty())
        throw std::invalid_argument("run_ssb_attack: capture too short for any burst");

    std::vector<bool> is_ssb_re(static_cast<size_t>(n_sc) * n_symbols, false);
    for (int i : sent_bursts)
        for (int l = 0; l < kSsbSymbols; ++l)
            for (int k = 0; k < kSsbSubcarriers; ++k)
                is_ssb_re[static_cast<size_t>(burst_set.bursts[i].start_symbol + l) *
                              n_sc +
                          first_sc + k] = true;

    std::vector<cd> pdsch_ref;
    std::vector<std::pair<int, int>> pdsch_pos;  // (subcarrier, symbol)
    const int bps = bits_per_symbol(sc.pdsch_mod);
    std::vector<int> bits(bps);
    for (int l = 0; l < n_symbols; ++l)
        for (int k = 0; k < n_sc; ++k) {
            if (is_ssb_re[static_cast<size_t>(l) * n_sc + k]) continue;
            for (int& b : bits) b = data_rng.uniform_int(0, 1);
            const cd s = modulate(bits, sc.pdsch_mod)[0];
            grid.at(k, l) = s;
            pdsch_ref.push_back(s);
            pdsch_pos.emplace_back(k, l);
        }

    auto samples = ofdm_modulate(grid);

    // --- gNB -> UE link scaling (per-RE rx power, grid-domain mW) ---
    const double d_sig = distance(sc.gnb_pos_m, sc.ue_pos_m);
    const double p_sig_re_dbm = sc.gnb_power_dbm - lin_to_db(n_sc) +
                                sc.gnb_gain_db + sc.ue_gain_db -
                                fspl_db(sc.carrier_hz, d_sig);
    const double sig_amp = std::sqrt(dbm_to_mw(p_sig_re_dbm));
    for (auto& v : samples) v *= sig_amp;

    const auto profile = cdl_a(sc.delay_spread_ns);
    if (sc.fading) convolve_per_slot(samples, num, profile, fade_rng);

    // --- jammers, each with its own waveform and fading stream ---
    for (size_t j = 0; j < sc.jammers.size(); ++j) {
        const auto& spec = sc.jammers[j];
        Rng jam_rng = rng.fork(100 + j);
        auto jam = synthesize_jam_waveform(spec, num, &burst_set, n_symbols, jam_rng);
        const double d_j = distance(spec.position_m, sc.ue_pos_m);
        if (d_j == 0.0)
            throw std::invalid_argument("run_ssb_attack: UE coincides with a jammer");
        const double path_db = spec.gain_db + sc.ue_gain_db -
                               fspl_db(sc.carrier_hz, d_j);
        const double amp = std::sqrt(db_to_lin(path_db));
        if (sc.fading) convolve_per_slot(jam, num, profile, jam_rng);
        for (size_t i = 0; i < samples.size(); ++i) samples[i] += amp * jam[i];
    }

    if (sc.thermal_noise) {
        const double sigma =
            std::sqrt(dbm_to_mw(noise_power_re_dbm(sc.scs_hz, sc.noise_figure_db)));
        for (auto& v : samples) v += sigma * noise_rng.cnormal();
    }

    // --- receiver ---
    LinkResult res;
    const int first_burst_sym = burst_set.bursts[sent_bursts.front()].start_symbol;
    res.true_pss_offset = num.symbol_useful_start(first_burst_sym);

    res.pss = detect_pss(samples, num, sc.pss_threshold);
    if (collect_dumps)
        res.pss_correlation = pss_correlation_profile(samples, num, pci.n_id_2);
    if (detect_only) return res;

    if (res.pss.detected && res.pss.n_id_2 >= 0) {
        // which burst did the detector lock onto?
        long best_off = -1;
        for (int i : sent_bursts) {
            const long off = num.symbol_useful_start(burst_set.bursts[i].start_symbol);
            if (best_off < 0 ||
                std::abs(off - res.pss.timing_offset) < std::abs(best_off - res.pss.timing_offset))
                best_off = off;
        }
        try {
            const auto rx_grid = extract_ssb_grid(samples, num, res.pss.timing_offset);
            const auto sss = detect_sss(rx_grid, res.pss.n_id_2);
            res.pci_detected = 3 * sss.n_id_1 + res.pss.n_id_2;
            if (collect_dumps) res.sss_scores = sss.scores;
            res.pci_ok = *res.pci_detected == sc.pci &&
                         res.pss.timing_offset == best_off;
        } catch (const std::invalid_argument&) {
            // detected peak too close to the capture edge to demodulate
        }
    }

    // --- genie-timed per-burst measurements ---
    cd h_sum{};
    int h_cnt = 0;
    double pbch_sum = 0.0, pss_sum = 0.0;
    for (int i : sent_bursts) {
        const auto& burst = burst_set.bursts[i];
        const long t0 = num.symbol_useful_start(burst.start_symbol);
        const auto rx_grid = extract_ssb_grid(samples, num, t0);

        BurstMeasurement m;
        m.ssb_index = burst.block.ssb_index;
        m.dmrs_sjnr_db = estimate_dmrs_sjnr(rx_grid, pci, m.ssb_index);
        std::vector<cd>* dump = collect_dumps && i == sent_bursts.front()
                                    ? &res.pbch_constellation
                                    : nullptr;
        const auto pbch = decode_pbch(rx_grid, pci, m.ssb_index, sc.mib_bits,
                                      sc.evm_decode_threshold, dump);
        m.pbch_evm_rms = pbch.evm_rms_percent;
        m.mib_decodable = pbch.mib_decodable;
        m.pss_evm_rms = pss_evm_rms(rx_grid, pci, m.ssb_index);
        res.bursts.push_back(m);

        pbch_sum += m.pbch_evm_rms;
        pss_sum += m.pss_evm_rms;
        res.mib_decodable = res.mib_decodable || m.mib_decodable;

        const auto h = dmrs_channel_profile(rx_grid, pci, m.ssb_index);
        for (const auto& hk : h) h_sum += hk;
        h_cnt += static_cast<int>(h.size());
    }
    res.mean_pbch_evm = pbch_sum / res.bursts.size();
    res.mean_pss_evm = pss_sum / res.bursts.size();

    // --- PDSCH EVM with the wideband scalar estimate from the SSB band ---
    cd h_wb = h_sum / static_cast<double>(h_cnt);
    if (std::norm(h_wb) == 0.0) h_wb = cd{1e-12, 0.0};
    const auto rx_full = ofdm_demodulate(samples, num, 0);
    std::vector<cd> pdsch_rx(pdsch_pos.size());
    for (size_t i = 0; i < pdsch_pos.size(); ++i)
        pdsch_rx[i] = rx_full.at(pdsch_pos[i].first, pdsch_pos[i].second);
    res.pdsch_evm_rms =
        pdsch_evm(pdsch_rx, pdsch_ref, h_wb,
                  collect_dumps ? &res.pdsch_constellation : nullptr);

    return res;
}

}  // namespace jamcell
