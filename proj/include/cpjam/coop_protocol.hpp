#pragma once

#include <optional>

#include "cpjam/channel.hpp"
#include "cpjam/dsp_core.hpp"
#include "cpjam/rng.hpp"

namespace cpjam {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

// Geometry, powers and waveform parameters for one experiment point.
// Relay lies on the source-destination segment, so d_rd = d_sd - d_sr.
struct Scenario {
    double d_sd_m = 1000.0;
    double d_sr_m = 500.0;
    double p1_dbm = 23.0;
    double p2_dbm = 23.0;
    double pj_dbm = 23.0;  // -inf represents a zero-power jammer
    double fc_ghz = 2.0;
    double sample_rate_hz = 3.84e6;
    std::size_t n_fft = 256;
    std::size_t cp_len = 32;
    std::size_t cir_len = 32;
    double shadow_sigma_db = 4.0;
    double decay_span_db = 20.0;
    double n0_dbm_per_hz = -174.0;
    bool jam_enabled = true;
    bool noise_enabled = true;
    std::optional<std::size_t> jam_offset_override_samples;

    double d_rd_m() const { return d_sd_m - d_sr_m; }
    double p1_watts() const { return dbm_to_watts(p1_dbm); }
    double p2_watts() const { return dbm_to_watts(p2_dbm); }
    double pj_watts() const { return dbm_to_watts(pj_dbm); }
    double noise_watts() const {
        if (!noise_enabled)
            return 0.0;
        return LinkNoise{n0_dbm_per_hz, sample_rate_hz}.power_watts();
    }
    OfdmParams ofdm_params() const { return {n_fft, cp_len}; }

    void validate() const;
};

struct TrialChannels {
    ChannelRealization ch_sd;
    ChannelRealization ch_sr;
    ChannelRealization ch_rd;  // reciprocal: also the destination->relay jamming path
};

// Independent streams for one trial. Jam-on and jam-off arms reuse the same
// struct, so every non-jamming draw is common between the two arms.
struct TrialRngs {
    RandomStream data;
    RandomStream noise_dest_p1;
    RandomStream noise_relay;
    RandomStream noise_dest_p2;
    RandomStream jam;
};

struct Phase1Output {
    IqBuffer y_dest_p1;  // destination's phase-1 window, length n_fft + cp_len
    IqBuffer y_relay;    // relay's phase-1 window, possibly jammed
    IqBuffer jam_ref;    // the exact transmitted burst, retained for cancellation
};

// Delay of the jamming burst within the relay's receive window: round of
// t_d * fs with t_d = (d_sd + d_rd - d_sr) / c, unless overridden.
std::size_t jam_offset_samples(const Scenario& scenario);

// cp_len i.i.d. complex Gaussian samples with per-sample power pj_watts.
IqBuffer generate_jamming(std::size_t cp_len, double pj_watts, RandomStream& rng);

// The jamming burst as seen inside the relay's receive window: burst through
// ch_rd, kept to its nominal cp_len duration, inserted at the propagation
// offset and clipped to the window.
IqBuffer jam_contribution_at_relay(const IqBuffer& jam_ref, const TrialChannels& channels,
                                   const Scenario& scenario);

Phase1Output phase1(const BitVec& bits, const Scenario& scenario, const TrialChannels& channels,
                    TrialRngs& rngs);

// Eavesdropper's best case: per-bin zero-forcing with genie CSI, then hard decisions.
BitVec relay_eavesdrop(const IqBuffer& y_relay, const TrialChannels& channels,
                       const Scenario& scenario);

// Per-bin gain sqrt(1 / (P1 |H_sr(k)|^2 + N0)) used by the relay's normalization
// and by the destination's reconstruction.
std::vector<double> aaf_beta(const TrialChannels& channels, const Scenario& scenario);

// Amplify-and-forward: FFT, per-bin scale by sqrt(P2) beta(k), IFFT, re-add CP.
IqBuffer relay_aaf_forward(const IqBuffer& y_relay, const TrialChannels& channels,
                           const Scenario& scenario);

// Relay block through ch_rd plus destination noise, window-aligned.
IqBuffer phase2(const IqBuffer& relay_tx, const TrialChannels& channels,
                const Scenario& scenario, RandomStream& noise_rng);

// Subtracts the known jamming contribution from the destination's phase-2 grid.
OfdmGrid cancel_jamming(const OfdmGrid& y_dest_p2_freq, const IqBuffer& jam_ref,
                        const TrialChannels& channels, const Scenario& scenario);

// Classic MRC with per-bin branch weights h*(k)/var(k); bins where both
// branches vanish produce 0.
OfdmGrid mrc_combine(const OfdmGrid& y1, const OfdmGrid& y2, const OfdmGrid& h1,
                     const OfdmGrid& h2, double var1, const std::vector<double>& var2_per_bin);

struct TrialObservation {
    BitVec bits_tx;
    BitVec bits_relay_hat;
    BitVec bits_dest_p1_hat;
    BitVec bits_dest_mrc_hat;
};

// Full two-phase chain for one OFDM block with pre-drawn channels and streams.
TrialObservation run_block(const BitVec& bits, const Scenario& scenario,
                           const TrialChannels& channels, TrialRngs& rngs);

}  // namespace cpjam
