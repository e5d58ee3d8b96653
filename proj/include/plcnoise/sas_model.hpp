#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plcnoise/bg_model.hpp"  // NoiseTrace
#include "plcnoise/errors.hpp"
#include "plcnoise/fft.hpp"
#include "plcnoise/format.hpp"
#include "plcnoise/rng.hpp"

// Symmetric alpha-stable model.  Convention: the scale gamma has amplitude
// units and enters the characteristic function as
//
//     |phi(t)| = exp(-(gamma |t|)^alpha),
//
// so alpha=2 with scale gamma is N(0, 2 gamma^2) and alpha=1 is Cauchy with
// half-width gamma.  A dispersion-style parameter (the coefficient of
// |t|^alpha) maps to this one as dispersion = gamma^alpha.

namespace plcnoise {

struct SasParams {
    double alpha = 2.0;  // index of stability, in (0, 2]
    double beta = 0.0;   // skewness, in [-1, 1]; generation/inversion need 0
    double gamma = 1.0;  // scale, > 0
    double delta = 0.0;  // location
};

inline void validate(const SasParams& pr) {
    if (!(pr.alpha > 0.0 && pr.alpha <= 2.0))
        throw param_error("sas: alpha must be in (0, 2], got " + detail::format_double(pr.alpha));
    if (!(pr.beta >= -1.0 && pr.beta <= 1.0))
        throw param_error("sas: beta must be in [-1, 1]");
    if (!(pr.gamma > 0.0) || !std::isfinite(pr.gamma))
        throw param_error("sas: gamma must be finite and > 0");
    if (!std::isfinite(pr.delta)) throw param_error("sas: delta must be finite");
}

// Characteristic function; the alpha=1 branch swaps the tan(pi alpha/2)
// skewness term for the (2/pi) log|t| correction, avoiding the singularity.
inline std::complex<double> sas_char_fn(const SasParams& pr, double t) {
    validate(pr);
    if (t == 0.0) return {1.0, 0.0};
    const double pi = 3.14159265358979323846;
    const double at = std::abs(t);
    const double mag = std::pow(pr.gamma * at, pr.alpha);
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    double im_skew;
    if (pr.alpha == 1.0) {
        im_skew = -mag * pr.beta * (2.0 / pi) * sgn * std::log(at);
    } else {
        im_skew = mag * pr.beta * std::tan(pi * pr.alpha / 2.0) * sgn;
    }
    return std::exp(std::complex<double>(-mag, pr.delta * t + im_skew));
}

namespace detail {

inline std::string sas_source_tag(const SasParams& pr) {
    return "sas(alpha=" + format_double(pr.alpha) + ",gamma=" + format_double(pr.gamma) +
           ",delta=" + format_double(pr.delta) + ")";
}

} // namespace detail

// Chambers-Mallows-Stuck transform for the symmetric case: with a uniform
// angle U on (-pi/2, pi/2) and an independent unit exponential W,
//
//     X = sin(alpha U) / cos(U)^{1/alpha} * [cos((1-alpha) U) / W]^{(1-alpha)/alpha}
//
// is standard SaS(alpha).  The expression needs no special casing: at
// alpha=1 the exponent is exactly zero (pow(x, 0) == 1) and X = tan(U), and
// at alpha=2 it reduces to 2 sin(U) sqrt(W).
inline NoiseTrace generate_sas(const SasParams& pr, std::size_t n, std::uint64_t seed) {
    validate(pr);
    if (pr.beta != 0.0)
        throw unsupported_skew_error("sas: generation supports beta = 0 only");
    if (n == 0) throw empty_request_error("sas: requested zero samples");

    NoiseTrace tr;
    tr.seed = seed;
    tr.source = detail::sas_source_tag(pr);
    tr.samples.resize(n);
    Rng rng(seed);
    const double half_pi = 1.5707963267948966;
    const double inv_alpha = 1.0 / pr.alpha;
    const double tail_exp = (1.0 - pr.alpha) * inv_alpha;
    for (auto& out : tr.samples) {
        const double u = rng.uniform_open(-half_pi, half_pi);
        const double w = rng.exponential();
        const double x = std::sin(pr.alpha * u) / std::pow(std::cos(u), inv_alpha) *
                         std::pow(std::cos((1.0 - pr.alpha) * u) / w, tail_exp);
        out = pr.gamma * x + pr.delta;
    }
    return tr;
}

namespace detail {

// Tail bound used to size the inversion period: for alpha < 2 the stable
// density decays like C u^{-(alpha+1)} with C = alpha gamma^alpha
// sin(pi alpha/2) Gamma(alpha) / pi; near alpha = 2 that constant vanishes
// while the real tail is transitional, so a Gaussian envelope with variance
// 2 gamma^2 is kept as a second bound.
inline double sas_tail_density_bound(double alpha, double gamma, double u) {
    const double pi = 3.14159265358979323846;
    double power = 0.0;
    if (alpha < 2.0) {
        const double c = alpha * std::pow(gamma, alpha) * std::sin(pi * alpha / 2.0) *
                         std::tgamma(alpha) / pi;
        power = c * std::pow(u, -(alpha + 1.0));
    }
    const double var = 2.0 * gamma * gamma;
    const double gauss = std::exp(-0.5 * u * u / var) / std::sqrt(2.0 * pi * var);
    return std::max(power, gauss);
}

} // namespace detail

// Direct oscillatory quadrature of the inversion integral at one point;
// the slow but grid-free fallback.  Panels are never wider than a
// half-oscillation of the cosine, each integrated with 16-point
// Gauss-Legendre.
inline double sas_pdf_point(const SasParams& pr, double x) {
    validate(pr);
    if (pr.beta != 0.0)
        throw unsupported_skew_error("sas: inversion supports beta = 0 only");
    const double pi = 3.14159265358979323846;
    const double r = std::abs(x - pr.delta) / pr.gamma;
    const double u_max = std::pow(40.0, 1.0 / pr.alpha);

    // 16-point Gauss-Legendre nodes/weights on [-1, 1].
    static const double gl_x[8] = {0.0950125098376374, 0.2816035507792589,
                                   0.4580167776572274, 0.6178762444026438,
                                   0.7554044083550030, 0.8656312023878318,
                                   0.9445750230732326, 0.9894009349916499};
    static const double gl_w[8] = {0.1894506104550685, 0.1826034150449236,
                                   0.1691565193950025, 0.1495959888165767,
                                   0.1246289712555339, 0.0951585116824928,
                                   0.0622535239386479, 0.0271524594117541};

    auto integrand = [&](double u) { return std::exp(-std::pow(u, pr.alpha)) * std::cos(u * r); };
    auto panel = [&](double a, double b) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < 8; ++i)
            acc += gl_w[i] * (integrand(c - h * gl_x[i]) + integrand(c + h * gl_x[i]));
        return acc * h;
    };

    // exp(-u^alpha) has unbounded curvature at the origin for non-integer
    // alpha; narrow panels on [0, 1] keep Gauss-Legendre at full accuracy.
    const double width = r > 0.0 ? std::min(pi / r, 0.5) : 0.5;
    const double fine = std::min(width, 0.0625);
    double total = 0.0;
    double a = 0.0;
    while (a < std::min(1.0, u_max)) {
        const double b = std::min(a + fine, std::min(1.0, u_max));
        total += panel(a, b);
        a = b;
    }
    while (a < u_max) {
        const double b = std::min(a + width, u_max);
        total += panel(a, b);
        a = b;
    }
    return total / (pi * pr.gamma);
}

// Numerical Fourier inversion on a uniform grid symmetric about delta:
//
//     f(x) = (1/pi) * Int_0^inf exp(-(gamma t)^alpha) cos(t (x - delta)) dt,
//
// discretized by the trapezoid rule and evaluated for all grid offsets at
// once with one FFT-backed cosine transform.  The internal lattice halves
// the requested spacing until the integrand is resolved, and the implied
// period grows until the wrap-around images of the fat tails contribute
// less than 1e-8 absolute density.
inline std::vector<double> sas_pdf(const SasParams& pr, std::span<const double> grid) {
    validate(pr);
    if (pr.beta != 0.0)
        throw unsupported_skew_error("sas: inversion supports beta = 0 only");
    if (grid.empty()) throw empty_request_error("sas_pdf: empty grid");
    const double pi = 3.14159265358979323846;

    if (grid.size() == 1) return {sas_pdf_point(pr, grid[0])};

    const double dx = grid[1] - grid[0];
    if (!(dx > 0.0)) throw param_error("sas_pdf: grid must be ascending");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - dx) > 1e-9 * dx)
            throw param_error("sas_pdf: grid must be uniform");
    if (std::abs(0.5 * (grid.front() + grid.back()) - pr.delta) > 1e-6 * dx)
        throw param_error("sas_pdf: grid must be symmetric about delta");

    const double y_max = grid.back() - pr.delta;
    if (dx > 0.5 * pr.gamma)
        throw resolution_error("sas_pdf: grid spacing above gamma/2 cannot resolve the density");
    if (y_max < 4.0 * pr.gamma)
        throw resolution_error("sas_pdf: grid half-width below 4*gamma leaves the tails unresolved");

    // Internal spacing: fine enough for the central lobe and for the
    // characteristic function to decay to ~1e-17 before the lattice Nyquist
    // frequency pi/di (truncation threshold (gamma t)^alpha >= 38).
    const double di_target =
        std::min(pr.gamma / 16.0, pi * pr.gamma / std::pow(38.0, 1.0 / pr.alpha));
    int s = 1;
    while (dx / std::pow(2.0, s) > di_target && s < 40) ++s;
    const double di = dx / std::pow(2.0, s);

    // Period: large enough to cover the requested grid, the stated floor of
    // 50*gamma, and the alias images of the tails at the 1e-8 level.
    double p_half = std::max({2.0 * y_max, 50.0 * pr.gamma, 8.0 * pr.gamma});
    while (2.0 * detail::sas_tail_density_bound(pr.alpha, pr.gamma, 2.0 * p_half - y_max) > 1e-8)
        p_half *= 2.0;

    std::size_t k = detail::next_pow2(static_cast<std::size_t>(std::ceil(p_half / di)));
    if (k < (std::size_t(1) << 16)) k = std::size_t(1) << 16;
    if (k > (std::size_t(1) << 22))
        throw resolution_error("sas_pdf: inversion grid would exceed 2^22 nodes");

    const double dt = pi / (static_cast<double>(k) * di);
    std::vector<double> phi(k + 1);
    for (std::size_t j = 0; j <= k; ++j)
        phi[j] = std::exp(-std::pow(pr.gamma * dt * static_cast<double>(j), pr.alpha));
    const auto series = detail::cosine_transform_even(phi);

    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid[i] - pr.delta;
        const auto m = static_cast<std::ptrdiff_t>(std::llround(y / di));
        const auto am = static_cast<std::size_t>(m < 0 ? -m : m);
        if (am > k) throw resolution_error("sas_pdf: internal lattice misses a grid point");
        out[i] = std::max(series[am] * dt / pi, 0.0);
    }
    return out;
}

} // namespace plcnoise
