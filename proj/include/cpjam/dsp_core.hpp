#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace cpjam {

using ComplexSample = std::complex<double>;
using IqBuffer = std::vector<ComplexSample>;
using BitVec = std::vector<std::uint8_t>;

// One OFDM block in the frequency domain: n_fft symbols.
using OfdmGrid = std::vector<ComplexSample>;

struct OfdmParams {
    std::size_t n_fft;   // power of two
    std::size_t cp_len;  // cp_len <= n_fft

    void validate() const;
};

bool is_power_of_two(std::size_t n);

// Gray-mapped unit-energy QPSK: bit pair (b0,b1) -> ((1-2b0) + j(1-2b1))/sqrt(2).
std::vector<ComplexSample> qpsk_modulate(const BitVec& bits);

// Hard nearest-neighbor decision; ties on a decision boundary resolve to the
// lexicographically smallest bit pair.
BitVec qpsk_demodulate(const std::vector<ComplexSample>& symbols);

// Orthonormal DFT pair: 1/sqrt(N) scaling in both directions, so Parseval
// holds exactly and power bookkeeping is scale-free.
OfdmGrid fft(const IqBuffer& x);
IqBuffer ifft(const OfdmGrid& grid);

IqBuffer add_cp(const IqBuffer& x, std::size_t cp_len);
IqBuffer remove_cp(const IqBuffer& x, std::size_t cp_len);

// grid -> ifft -> prepend CP; block length n_fft + cp_len.
IqBuffer ofdm_modulate(const OfdmGrid& grid, const OfdmParams& params);
OfdmGrid ofdm_demodulate(const IqBuffer& block, const OfdmParams& params);

}  // namespace cpjam
