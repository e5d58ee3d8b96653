#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "plcnoise/errors.hpp"

namespace plcnoise::detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 FFT, sign = -1 forward / +1 inverse (inverse is
// unnormalized).  Twiddles advance by running product and are re-anchored to
// std::polar every 256 butterflies, which keeps the accumulated rounding a
// few ulps even for 2^23-point transforms.
inline void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw param_error("fft length must be a power of two");
    if (n <= 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * 3.14159265358979323846 / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                if ((k & 0xFF) == 0) w = std::polar(1.0, ang * static_cast<double>(k));
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= std::polar(1.0, ang);
            }
        }
    }
}

// Linear convolution of two real sequences via zero-padded FFT.
// Result length is a.size() + b.size() - 1.
inline std::vector<double> convolve(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw empty_request_error("convolve: empty input");
    const std::size_t out_n = a.size() + b.size() - 1;
    const std::size_t n = next_pow2(out_n);
    std::vector<std::complex<double>> fa(n), fb(n);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft_radix2(fa, -1);
    fft_radix2(fb, -1);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft_radix2(fa, +1);
    std::vector<double> out(out_n);
    for (std::size_t i = 0; i < out_n; ++i) out[i] = fa[i].real() / static_cast<double>(n);
    return out;
}

// Cosine series sums f(m) = c0/2 + sum_{k=1}^{K-1} c_k cos(pi k m / K) + c_K cos(pi m)/2
// for m = 0..K, evaluated with one complex FFT of length 2K on the even
// extension of c.  This is the discrete form of a symmetric Fourier
// inversion integral sampled on a uniform grid.
inline std::vector<double> cosine_transform_even(const std::vector<double>& c) {
    const std::size_t kmax = c.size() - 1;
    if (c.size() < 2 || !is_pow2(kmax))
        throw param_error("cosine_transform_even: need K+1 coefficients, K a power of two");
    const std::size_t m = 2 * kmax;
    std::vector<std::complex<double>> buf(m);
    buf[0] = c[0];
    buf[kmax] = c[kmax];
    for (std::size_t k = 1; k < kmax; ++k) {
        buf[k] = c[k];
        buf[m - k] = c[k];
    }
    fft_radix2(buf, -1);
    std::vector<double> out(kmax + 1);
    for (std::size_t j = 0; j <= kmax; ++j)
        out[j] = 0.5 * buf[j].real();
    return out;
}

} // namespace plcnoise::detail
