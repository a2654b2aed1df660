#pragma once

#include "cpjam/dsp_core.hpp"
#include "cpjam/rng.hpp"

namespace cpjam {

// One link draw: unit-power tap profile plus the link's pathloss amplitude.
struct ChannelRealization {
    std::vector<ComplexSample> taps;  // expected energy 1 before amp_scale
    double amp_scale;                 // linear amplitude, sqrt(10^(-PL_dB/10))
};

struct PathlossParams {
    double fc_ghz;
    double shadow_sigma_db;
};

struct LinkNoise {
    double n0_dbm_per_hz;
    double bandwidth_hz;

    double power_watts() const;
};

// Urban-macro pathloss in dB: 22 log10(d) + 20 log10(fc) + 28 + shadow term.
// The shadow draw is supplied by the caller; this function is deterministic.
double pathloss_db(double d_m, const PathlossParams& params, double shadow_draw_db);

// Rayleigh taps with exponential power delay profile. decay_span_db is the
// power drop from first to last tap; profile normalized to unit total energy.
std::vector<ComplexSample> draw_rayleigh_taps(std::size_t cir_len, double decay_span_db,
                                              RandomStream& rng);

// Full linear convolution with amp_scale * taps; output length len(x) + cir_len - 1.
IqBuffer apply_channel(const IqBuffer& x, const ChannelRealization& ch);

// Adds circularly-symmetric complex Gaussian noise of total power noise_power_w.
IqBuffer awgn(const IqBuffer& x, double noise_power_w, RandomStream& rng);

// n_fft-point frequency response of amp_scale * taps, scaled so that for a
// CP-OFDM block with cp_len >= cir_len - 1 the per-subcarrier model
// Y(k) = H(k) S(k) holds with apply_channel and the orthonormal DFT pair.
OfdmGrid cfr_from_taps(const ChannelRealization& ch, std::size_t n_fft);

double dbm_to_watts(double p_dbm);
double watts_to_dbm(double p_watts);

}  // namespace cpjam
