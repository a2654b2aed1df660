#include "cpjam/dsp_core.hpp"

#include <cmath>
#include <stdexcept>

namespace cpjam {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void OfdmParams::validate() const {
    if (!is_power_of_two(n_fft))
        throw std::invalid_argument("n_fft must be a power of two");
    if (cp_len > n_fft)
        throw std::invalid_argument("cp_len must not exceed n_fft");
}

std::vector<ComplexSample> qpsk_modulate(const BitVec& bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("qpsk_modulate: bit count must be even");
    std::vector<ComplexSample> out(bits.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double re = bits[2 * i] ? -M_SQRT1_2 : M_SQRT1_2;
        const double im = bits[2 * i + 1] ? -M_SQRT1_2 : M_SQRT1_2;
        out[i] = {re, im};
    }
    return out;
}

BitVec qpsk_demodulate(const std::vector<ComplexSample>& symbols) {
    BitVec out(symbols.size() * 2);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        // boundary (== 0) decides toward bit 0
        out[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
        out[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
    }
    return out;
}

namespace {

// In-place iterative radix-2 Cooley-Tukey; sign = -1 forward, +1 inverse.
void fft_radix2(std::vector<ComplexSample>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("fft: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const ComplexSample wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            ComplexSample w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const ComplexSample u = a[i + k];
                const ComplexSample v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& s : a)
        s *= scale;
}

}  // namespace

OfdmGrid fft(const IqBuffer& x) {
    OfdmGrid out = x;
    fft_radix2(out, -1);
    return out;
}

IqBuffer ifft(const OfdmGrid& grid) {
    IqBuffer out = grid;
    fft_radix2(out, +1);
    return out;
}

IqBuffer add_cp(const IqBuffer& x, std::size_t cp_len) {
    if (cp_len > x.size())
        throw std::invalid_argument("add_cp: cp_len exceeds block length");
    IqBuffer out;
    out.reserve(x.size() + cp_len);
    out.insert(out.end(), x.end() - static_cast<std::ptrdiff_t>(cp_len), x.end());
    out.insert(out.end(), x.begin(), x.end());
    return out;
}

IqBuffer remove_cp(const IqBuffer& x, std::size_t cp_len) {
    if (cp_len > x.size())
        throw std::invalid_argument("remove_cp: cp_len exceeds buffer length");
    return IqBuffer(x.begin() + static_cast<std::ptrdiff_t>(cp_len), x.end());
}

IqBuffer ofdm_modulate(const OfdmGrid& grid, const OfdmParams& params) {
    params.validate();
    if (grid.size() != params.n_fft)
        throw std::invalid_argument("ofdm_modulate: grid length must equal n_fft");
    return add_cp(ifft(grid), params.cp_len);
}

OfdmGrid ofdm_demodulate(const IqBuffer& block, const OfdmParams& params) {
    params.validate();
    if (block.size() != params.n_fft + params.cp_len)
        throw std::invalid_argument("ofdm_demodulate: block length must equal n_fft + cp_len");
    return fft(remove_cp(block, params.cp_len));
}

}  // namespace cpjam
