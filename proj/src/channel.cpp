#include "cpjam/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cpjam {

double LinkNoise::power_watts() const {
    if (bandwidth_hz <= 0.0)
        throw std::invalid_argument("LinkNoise: bandwidth must be positive");
    return dbm_to_watts(n0_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
}

double pathloss_db(double d_m, const PathlossParams& params, double shadow_draw_db) {
    if (d_m <= 0.0)
        throw std::invalid_argument("pathloss_db: distance must be positive");
    if (params.fc_ghz <= 0.0)
        throw std::invalid_argument("pathloss_db: carrier frequency must be positive");
    return 22.0 * std::log10(d_m) + 20.0 * std::log10(params.fc_ghz) + 28.0 + shadow_draw_db;
}

std::vector<ComplexSample> draw_rayleigh_taps(std::size_t cir_len, double decay_span_db,
                                              RandomStream& rng) {
    if (cir_len == 0)
        throw std::invalid_argument("draw_rayleigh_taps: cir_len must be >= 1");
    if (decay_span_db < 0.0)
        throw std::invalid_argument("draw_rayleigh_taps: decay span must be >= 0");

    std::vector<double> profile(cir_len);
    double total = 0.0;
    for (std::size_t l = 0; l < cir_len; ++l) {
        const double frac =
            cir_len == 1 ? 0.0
                         : static_cast<double>(l) / static_cast<double>(cir_len - 1);
        profile[l] = std::pow(10.0, -(decay_span_db / 10.0) * frac);
        total += profile[l];
    }

    std::vector<ComplexSample> taps(cir_len);
    for (std::size_t l = 0; l < cir_len; ++l)
        taps[l] = rng.cgauss(profile[l] / total);
    return taps;
}

IqBuffer apply_channel(const IqBuffer& x, const ChannelRealization& ch) {
    if (ch.taps.empty())
        throw std::invalid_argument("apply_channel: channel has no taps");
    IqBuffer out(x.size() + ch.taps.size() - 1, ComplexSample{0.0, 0.0});
    for (std::size_t n = 0; n < x.size(); ++n) {
        const ComplexSample xs = x[n] * ch.amp_scale;
        for (std::size_t l = 0; l < ch.taps.size(); ++l)
            out[n + l] += xs * ch.taps[l];
    }
    return out;
}

IqBuffer awgn(const IqBuffer& x, double noise_power_w, RandomStream& rng) {
    if (noise_power_w < 0.0)
        throw std::invalid_argument("awgn: noise power must be >= 0");
    if (noise_power_w == 0.0)
        return x;
    IqBuffer out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] + rng.cgauss(noise_power_w);
    return out;
}

OfdmGrid cfr_from_taps(const ChannelRealization& ch, std::size_t n_fft) {
    if (ch.taps.size() > n_fft)
        throw std::invalid_argument("cfr_from_taps: cir_len exceeds n_fft");
    IqBuffer padded(n_fft, ComplexSample{0.0, 0.0});
    for (std::size_t l = 0; l < ch.taps.size(); ++l)
        padded[l] = ch.taps[l] * ch.amp_scale;
    // Unnormalized DFT of the taps: with the orthonormal pair,
    // fft(x circconv h) = sqrt(N) fft(x) fft(h).
    OfdmGrid grid = fft(padded);
    const double scale = std::sqrt(static_cast<double>(n_fft));
    for (auto& g : grid)
        g *= scale;
    return grid;
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double watts_to_dbm(double p_watts) {
    if (p_watts <= 0.0)
        throw std::invalid_argument("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(p_watts) + 30.0;
}

}  // namespace cpjam
