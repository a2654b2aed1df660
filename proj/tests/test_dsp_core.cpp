#include <doctest.h>

#include <cmath>

#include "cpjam/dsp_core.hpp"
#include "cpjam/rng.hpp"

using namespace cpjam;

namespace {

double energy(const IqBuffer& x) {
    double e = 0.0;
    for (const auto& s : x)
        e += std::norm(s);
    return e;
}

IqBuffer random_iq(std::size_t n, RandomStream& rng) {
    IqBuffer x(n);
    for (auto& s : x)
        s = rng.cgauss(1.0);
    return x;
}

}  // namespace

TEST_CASE("qpsk gray mapping and unit energy") {
    const auto s00 = qpsk_modulate({0, 0});
    CHECK(s00[0].real() == doctest::Approx(M_SQRT1_2));
    CHECK(s00[0].imag() == doctest::Approx(M_SQRT1_2));

    const auto s11 = qpsk_modulate({1, 1});
    CHECK(s11[0] == -s00[0]);

    double e = 0.0;
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
            const auto s = qpsk_modulate({static_cast<std::uint8_t>(b0),
                                          static_cast<std::uint8_t>(b1)});
            e += std::norm(s[0]);
            // Gray: adjacent points differ in one bit
            CHECK(std::abs(std::abs(s[0].real()) - M_SQRT1_2) < 1e-15);
        }
    CHECK(e / 4.0 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("qpsk odd-length input rejected") {
    CHECK_THROWS_AS(qpsk_modulate({0, 1, 0}), std::invalid_argument);
}

TEST_CASE("qpsk demodulation: nearest neighbor and tie-break") {
    CHECK(qpsk_demodulate({{0.9, 0.8}}) == BitVec{0, 0});
    CHECK(qpsk_demodulate({{0.0, 0.0}}) == BitVec{0, 0});
    CHECK(qpsk_demodulate({{-0.1, 2.0}}) == BitVec{1, 0});
}

TEST_CASE("qpsk modulate/demodulate round trip, exhaustive constellation") {
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
            const BitVec bits{static_cast<std::uint8_t>(b0), static_cast<std::uint8_t>(b1)};
            CHECK(qpsk_demodulate(qpsk_modulate(bits)) == bits);
        }

    RandomStream rng(7);
    BitVec bits(512);
    for (auto& b : bits)
        b = rng.uniform01() < 0.5 ? 0 : 1;
    CHECK(qpsk_demodulate(qpsk_modulate(bits)) == bits);
}

TEST_CASE("fft impulse and DC") {
    const auto flat = fft({{1, 0}, {0, 0}, {0, 0}, {0, 0}});
    for (const auto& s : flat) {
        CHECK(s.real() == doctest::Approx(0.5));
        CHECK(s.imag() == doctest::Approx(0.0));
    }

    const auto dc = fft({{1, 0}, {1, 0}, {1, 0}, {1, 0}});
    CHECK(dc[0].real() == doctest::Approx(2.0));
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(std::abs(dc[k]) < 1e-14);
}

TEST_CASE("fft rejects non-power-of-two length") {
    CHECK_THROWS_AS(fft(IqBuffer(12)), std::invalid_argument);
    CHECK_THROWS_AS(fft(IqBuffer(0)), std::invalid_argument);
}

TEST_CASE("fft/ifft round trip, Parseval, linearity") {
    RandomStream rng(11);
    for (std::size_t n : {4u, 64u, 256u}) {
        const IqBuffer x = random_iq(n, rng);
        const IqBuffer y = random_iq(n, rng);

        const auto X = fft(x);
        CHECK(std::abs(energy(X) - energy(x)) <= 1e-12 * energy(x));

        const auto back = ifft(X);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(back[i] - x[i]) <= 1e-12 * std::sqrt(energy(x)));

        const ComplexSample a{0.7, -0.3}, b{-1.2, 0.5};
        IqBuffer mix(n);
        for (std::size_t i = 0; i < n; ++i)
            mix[i] = a * x[i] + b * y[i];
        const auto lhs = fft(mix);
        const auto fx = fft(x);
        const auto fy = fft(y);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(lhs[k] - (a * fx[k] + b * fy[k])) <= 1e-12 * std::sqrt(energy(mix)));
    }
}

TEST_CASE("cyclic prefix insertion/removal") {
    const IqBuffer x{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
    const auto with_cp = add_cp(x, 2);
    const IqBuffer expect{{3, 0}, {4, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};
    CHECK(with_cp == expect);
    CHECK(add_cp(x, 0) == x);
    CHECK(remove_cp(with_cp, 2) == x);
    CHECK_THROWS_AS(add_cp(x, 5), std::invalid_argument);

    RandomStream rng(3);
    const IqBuffer r = random_iq(64, rng);
    CHECK(remove_cp(add_cp(r, 16), 16) == r);  // bit-exact
}

TEST_CASE("ofdm modulate/demodulate") {
    const OfdmParams params{64, 16};

    const OfdmGrid zeros(64, ComplexSample{0, 0});
    for (const auto& s : ofdm_modulate(zeros, params))
        CHECK(s == ComplexSample{0, 0});

    // single subcarrier -> complex exponential
    OfdmGrid single(64, ComplexSample{0, 0});
    single[3] = {1, 0};
    const auto block = ofdm_modulate(single, params);
    CHECK(block.size() == 80);
    const auto body = remove_cp(block, 16);
    for (std::size_t n = 0; n < 64; ++n) {
        const double ang = 2.0 * M_PI * 3.0 * static_cast<double>(n) / 64.0;
        const ComplexSample expect = std::polar(1.0 / 8.0, ang);
        CHECK(std::abs(body[n] - expect) < 1e-13);
    }

    RandomStream rng(5);
    BitVec bits(128);
    for (auto& b : bits)
        b = rng.uniform01() < 0.5 ? 0 : 1;
    const OfdmGrid grid = qpsk_modulate(bits);
    const auto round = ofdm_demodulate(ofdm_modulate(grid, params), params);
    for (std::size_t k = 0; k < 64; ++k)
        CHECK(std::abs(round[k] - grid[k]) <= 1e-12);
}

TEST_CASE("ofdm params validation") {
    CHECK_THROWS_AS(OfdmParams({100, 10}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(OfdmParams({64, 65}).validate(), std::invalid_argument);
    CHECK_NOTHROW(OfdmParams({64, 64}).validate());
}
