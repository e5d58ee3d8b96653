#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "plcnoise/fft.hpp"

using plcnoise::detail::convolve;
using plcnoise::detail::cosine_transform_even;
using plcnoise::detail::fft_radix2;

namespace {

std::vector<std::complex<double>> random_complex(std::size_t n, unsigned seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<std::complex<double>> v(n);
    for (auto& x : v) x = {uni(eng), uni(eng)};
    return v;
}

} // namespace

TEST_CASE("fft matches the naive dft", "[fft]") {
    auto x = random_complex(64, 11);
    auto want = oracle::naive_dft(x, -1);
    auto got = x;
    fft_radix2(got, -1);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) < 1e-10);
}

TEST_CASE("fft round trip restores the input", "[fft]") {
    auto x = random_complex(1 << 12, 3);
    auto y = x;
    fft_radix2(y, -1);
    fft_radix2(y, +1);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(y[i] / double(x.size()) - x[i]) < 1e-12);
}

TEST_CASE("fft of a unit impulse is flat", "[fft]") {
    std::vector<std::complex<double>> x(32, 0.0);
    x[0] = 1.0;
    fft_radix2(x, -1);
    for (const auto& v : x) CHECK(std::abs(v - std::complex<double>(1.0, 0.0)) < 1e-14);
}

TEST_CASE("fft rejects non power of two lengths", "[fft]") {
    std::vector<std::complex<double>> x(12, 0.0);
    CHECK_THROWS_AS(fft_radix2(x, -1), plcnoise::param_error);
}

TEST_CASE("convolve matches direct convolution", "[fft]") {
    std::mt19937_64 eng(17);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<double> a(37), b(61);
    for (auto& v : a) v = uni(eng);
    for (auto& v : b) v = uni(eng);
    auto want = oracle::direct_convolve(a, b);
    auto got = convolve(a, b);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) < 1e-11);
}

TEST_CASE("cosine_transform_even matches the direct cosine sum", "[fft]") {
    const std::size_t kmax = 64;
    std::mt19937_64 eng(29);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> c(kmax + 1);
    for (auto& v : c) v = uni(eng);

    auto got = cosine_transform_even(c);
    REQUIRE(got.size() == kmax + 1);
    const double pi = 3.14159265358979323846;
    for (std::size_t m = 0; m <= kmax; m += 7) {
        double want = 0.5 * c[0] + 0.5 * c[kmax] * std::cos(pi * double(m));
        for (std::size_t k = 1; k < kmax; ++k)
            want += c[k] * std::cos(pi * double(k) * double(m) / double(kmax));
        CHECK(std::abs(got[m] - want) < 1e-12);
    }
}
