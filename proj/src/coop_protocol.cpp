#include "cpjam/coop_protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace cpjam {

void Scenario::validate() const {
    if (!(d_sr_m > 0.0) || !(d_sr_m < d_sd_m))
        throw std::invalid_argument("Scenario: require 0 < d_sr_m < d_sd_m");
    if (sample_rate_hz <= 0.0)
        throw std::invalid_argument("Scenario: sample_rate_hz must be positive");
    if (cir_len == 0)
        throw std::invalid_argument("Scenario: cir_len must be >= 1");
    if (cp_len + 1 < cir_len)
        throw std::invalid_argument("Scenario: cp_len must be >= cir_len - 1");
    ofdm_params().validate();
}

std::size_t jam_offset_samples(const Scenario& scenario) {
    if (scenario.jam_offset_override_samples)
        return *scenario.jam_offset_override_samples;
    const double t_d =
        (scenario.d_sd_m + scenario.d_rd_m() - scenario.d_sr_m) / kSpeedOfLight;
    return static_cast<std::size_t>(std::llround(t_d * scenario.sample_rate_hz));
}

IqBuffer generate_jamming(std::size_t cp_len, double pj_watts, RandomStream& rng) {
    if (pj_watts < 0.0)
        throw std::invalid_argument("generate_jamming: power must be >= 0");
    IqBuffer burst(cp_len);
    for (auto& s : burst)
        s = rng.cgauss(pj_watts);
    return burst;
}

IqBuffer jam_contribution_at_relay(const IqBuffer& jam_ref, const TrialChannels& channels,
                                   const Scenario& scenario) {
    const std::size_t window = scenario.n_fft + scenario.cp_len;
    IqBuffer out(window, ComplexSample{0.0, 0.0});
    if (jam_ref.empty())
        return out;
    // Burst through the (reciprocal) relay-destination channel, kept to its
    // nominal duration so the received jam occupies exactly cp_len samples
    // starting at the propagation offset.
    IqBuffer rx = apply_channel(jam_ref, channels.ch_rd);
    rx.resize(jam_ref.size());
    const std::size_t offset = jam_offset_samples(scenario);
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const std::size_t n = offset + i;
        if (n >= window)
            break;
        out[n] = rx[i];
    }
    return out;
}

Phase1Output phase1(const BitVec& bits, const Scenario& scenario, const TrialChannels& channels,
                    TrialRngs& rngs) {
    if (bits.size() != 2 * scenario.n_fft)
        throw std::invalid_argument("phase1: expected 2*n_fft bits");

    const OfdmParams params = scenario.ofdm_params();
    const std::size_t window = scenario.n_fft + scenario.cp_len;
    const double amp_tx = std::sqrt(scenario.p1_watts());
    const double n0_w = scenario.noise_watts();

    OfdmGrid grid = qpsk_modulate(bits);
    IqBuffer tx = ofdm_modulate(grid, params);
    for (auto& s : tx)
        s *= amp_tx;

    IqBuffer y_dest = apply_channel(tx, channels.ch_sd);
    y_dest.resize(window);
    y_dest = awgn(y_dest, n0_w, rngs.noise_dest_p1);

    IqBuffer y_relay = apply_channel(tx, channels.ch_sr);
    y_relay.resize(window);

    IqBuffer jam_ref = generate_jamming(scenario.cp_len, scenario.pj_watts(), rngs.jam);
    if (scenario.jam_enabled) {
        const IqBuffer jam_rx = jam_contribution_at_relay(jam_ref, channels, scenario);
        for (std::size_t i = 0; i < window; ++i)
            y_relay[i] += jam_rx[i];
    }
    y_relay = awgn(y_relay, n0_w, rngs.noise_relay);

    return {std::move(y_dest), std::move(y_relay), std::move(jam_ref)};
}

namespace {

// Per-bin zero-forcing with hard decisions; zero bins fall back to the raw value.
BitVec zf_decode(const OfdmGrid& y, const OfdmGrid& h) {
    OfdmGrid eq(y.size());
    for (std::size_t k = 0; k < y.size(); ++k)
        eq[k] = h[k] == ComplexSample{0.0, 0.0} ? y[k] : y[k] / h[k];
    return qpsk_demodulate(eq);
}

}  // namespace

BitVec relay_eavesdrop(const IqBuffer& y_relay, const TrialChannels& channels,
                       const Scenario& scenario) {
    const OfdmGrid y = ofdm_demodulate(y_relay, scenario.ofdm_params());
    OfdmGrid h = cfr_from_taps(channels.ch_sr, scenario.n_fft);
    const double amp = std::sqrt(scenario.p1_watts());
    for (auto& hk : h)
        hk *= amp;
    return zf_decode(y, h);
}

std::vector<double> aaf_beta(const TrialChannels& channels, const Scenario& scenario) {
    const OfdmGrid h_sr = cfr_from_taps(channels.ch_sr, scenario.n_fft);
    const double p1 = scenario.p1_watts();
    const double n0_w = scenario.noise_watts();
    std::vector<double> beta(h_sr.size());
    for (std::size_t k = 0; k < h_sr.size(); ++k) {
        const double denom = p1 * std::norm(h_sr[k]) + n0_w;
        beta[k] = denom > 0.0 ? std::sqrt(1.0 / denom) : 0.0;
    }
    return beta;
}

IqBuffer relay_aaf_forward(const IqBuffer& y_relay, const TrialChannels& channels,
                           const Scenario& scenario) {
    OfdmGrid y = ofdm_demodulate(y_relay, scenario.ofdm_params());
    const std::vector<double> beta = aaf_beta(channels, scenario);
    const double amp = std::sqrt(scenario.p2_watts());
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] *= amp * beta[k];
    return ofdm_modulate(y, scenario.ofdm_params());
}

IqBuffer phase2(const IqBuffer& relay_tx, const TrialChannels& channels,
                const Scenario& scenario, RandomStream& noise_rng) {
    const std::size_t window = scenario.n_fft + scenario.cp_len;
    IqBuffer y = apply_channel(relay_tx, channels.ch_rd);
    y.resize(window);
    return awgn(y, scenario.noise_watts(), noise_rng);
}

OfdmGrid cancel_jamming(const OfdmGrid& y_dest_p2_freq, const IqBuffer& jam_ref,
                        const TrialChannels& channels, const Scenario& scenario) {
    const IqBuffer jam_win = jam_contribution_at_relay(jam_ref, channels, scenario);
    const OfdmGrid jam_grid = ofdm_demodulate(jam_win, scenario.ofdm_params());
    const OfdmGrid h_rd = cfr_from_taps(channels.ch_rd, scenario.n_fft);
    const std::vector<double> beta = aaf_beta(channels, scenario);
    const double amp = std::sqrt(scenario.p2_watts());

    OfdmGrid out = y_dest_p2_freq;
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] -= amp * beta[k] * h_rd[k] * jam_grid[k];
    return out;
}

OfdmGrid mrc_combine(const OfdmGrid& y1, const OfdmGrid& y2, const OfdmGrid& h1,
                     const OfdmGrid& h2, double var1, const std::vector<double>& var2_per_bin) {
    const std::size_t n = y1.size();
    if (y2.size() != n || h1.size() != n || h2.size() != n || var2_per_bin.size() != n)
        throw std::invalid_argument("mrc_combine: grid lengths must match");
    if (var1 <= 0.0)
        throw std::invalid_argument("mrc_combine: variances must be positive");

    OfdmGrid out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (var2_per_bin[k] <= 0.0)
            throw std::invalid_argument("mrc_combine: variances must be positive");
        const ComplexSample num =
            std::conj(h1[k]) * y1[k] / var1 + std::conj(h2[k]) * y2[k] / var2_per_bin[k];
        const double den = std::norm(h1[k]) / var1 + std::norm(h2[k]) / var2_per_bin[k];
        out[k] = den > 0.0 ? num / den : ComplexSample{0.0, 0.0};
    }
    return out;
}

TrialObservation run_block(const BitVec& bits, const Scenario& scenario,
                           const TrialChannels& channels, TrialRngs& rngs) {
    const Phase1Output p1 = phase1(bits, scenario, channels, rngs);

    TrialObservation obs;
    obs.bits_tx = bits;
    obs.bits_relay_hat = relay_eavesdrop(p1.y_relay, channels, scenario);

    const IqBuffer relay_tx = relay_aaf_forward(p1.y_relay, channels, scenario);
    const IqBuffer y_p2 = phase2(relay_tx, channels, scenario, rngs.noise_dest_p2);

    const OfdmGrid y1 = ofdm_demodulate(p1.y_dest_p1, scenario.ofdm_params());
    OfdmGrid y2 = ofdm_demodulate(y_p2, scenario.ofdm_params());
    if (scenario.jam_enabled)
        y2 = cancel_jamming(y2, p1.jam_ref, channels, scenario);

    const OfdmGrid h_sd = cfr_from_taps(channels.ch_sd, scenario.n_fft);
    const OfdmGrid h_sr = cfr_from_taps(channels.ch_sr, scenario.n_fft);
    const OfdmGrid h_rd = cfr_from_taps(channels.ch_rd, scenario.n_fft);
    const std::vector<double> beta = aaf_beta(channels, scenario);
    const double p1w = scenario.p1_watts();
    const double p2w = scenario.p2_watts();
    const double n0_w = scenario.noise_watts();
    const double amp1 = std::sqrt(p1w);

    OfdmGrid h1(scenario.n_fft);
    OfdmGrid h2(scenario.n_fft);
    std::vector<double> var2(scenario.n_fft);
    const double var1 = n0_w > 0.0 ? n0_w : 1.0;
    for (std::size_t k = 0; k < scenario.n_fft; ++k) {
        h1[k] = amp1 * h_sd[k];
        h2[k] = std::sqrt(p1w * p2w) * beta[k] * h_rd[k] * h_sr[k];
        // relay noise forwarded through beta and ch_rd, plus the local noise
        const double v = p2w * std::norm(h_rd[k]) * beta[k] * beta[k] * n0_w + n0_w;
        var2[k] = v > 0.0 ? v : 1.0;
    }

    obs.bits_dest_p1_hat = zf_decode(y1, h1);
    obs.bits_dest_mrc_hat = qpsk_demodulate(mrc_combine(y1, y2, h1, h2, var1, var2));
    return obs;
}

}  // namespace cpjam
