#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plcnoise/errors.hpp"
#include "plcnoise/format.hpp"
#include "plcnoise/rng.hpp"

// Bernoulli-Gaussian impulsive noise model.  A sample is
//
//     x = sigma_b * n0 + sigma_i * n1 * phi,
//
// with n0, n1 independent standard normals and phi ~ Bernoulli(p), so the
// impulse amplitude scales with sigma_i (standard deviation, not variance)
// and rides on top of the always-present background.  Conditioned on an
// impulse the variance is sigma_b^2 + sigma_i^2.

namespace plcnoise {

struct BgParams {
    double p = 0.0;        // impulse probability in [0, 1]
    double sigma_b = 1.0;  // background standard deviation, > 0
    double sigma_i = 0.0;  // impulse standard deviation, >= 0
};

struct NoiseTrace {
    std::vector<double> samples;
    std::uint64_t seed = 0;
    std::string source;
};

inline void validate(const BgParams& pr) {
    if (!(pr.p >= 0.0 && pr.p <= 1.0))
        throw param_error("bg: p must be in [0, 1], got " + detail::format_double(pr.p));
    if (!(pr.sigma_b > 0.0) || !std::isfinite(pr.sigma_b))
        throw param_error("bg: sigma_b must be finite and > 0");
    if (!(pr.sigma_i >= 0.0) || !std::isfinite(pr.sigma_i))
        throw param_error("bg: sigma_i must be finite and >= 0");
}

namespace detail {

inline double normal_pdf_var(double x, double var) {
    return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * 3.14159265358979323846 * var);
}

inline double normal_cdf_sd(double x, double sd) {
    return 0.5 * std::erfc(-x / (sd * 1.4142135623730951));
}

inline std::string bg_source_tag(const BgParams& pr) {
    return "bg(p=" + format_double(pr.p) + ",sigma_b=" + format_double(pr.sigma_b) +
           ",sigma_i=" + format_double(pr.sigma_i) + ")";
}

} // namespace detail

// Mixture density: f(x) = (1-p) N(x; 0, sigma_b^2) + p N(x; 0, sigma_b^2 + sigma_i^2).
inline double bg_pdf(double x, const BgParams& pr) {
    validate(pr);
    const double vb = pr.sigma_b * pr.sigma_b;
    const double vi = vb + pr.sigma_i * pr.sigma_i;
    return (1.0 - pr.p) * detail::normal_pdf_var(x, vb) + pr.p * detail::normal_pdf_var(x, vi);
}

inline double bg_cdf(double x, const BgParams& pr) {
    validate(pr);
    const double si = std::sqrt(pr.sigma_b * pr.sigma_b + pr.sigma_i * pr.sigma_i);
    return (1.0 - pr.p) * detail::normal_cdf_sd(x, pr.sigma_b) +
           pr.p * detail::normal_cdf_sd(x, si);
}

// Density of the sum of two i.i.d. mixture samples: the four convolution
// branches collapse to three centered normals.  With s1^2 = sigma_b^2 + sigma_i^2
// and s2^2 = 2 sigma_b^2 + sigma_i^2:
//
//   f(w) = (1-p)^2 N(w; 0, 2 sigma_b^2) + p^2 N(w; 0, 2 s1^2) + 2p(1-p) N(w; 0, s2^2).
inline double bg_sum_pdf(double w, const BgParams& pr) {
    validate(pr);
    const double vb = pr.sigma_b * pr.sigma_b;
    const double vi = pr.sigma_i * pr.sigma_i;
    const double q = 1.0 - pr.p;
    return q * q * detail::normal_pdf_var(w, 2.0 * vb) +
           pr.p * pr.p * detail::normal_pdf_var(w, 2.0 * (vb + vi)) +
           2.0 * pr.p * q * detail::normal_pdf_var(w, 2.0 * vb + vi);
}

// Per-sample draw order is fixed (Bernoulli uniform, background normal,
// impulse normal only when hit), so a trace is reproducible from its seed.
inline NoiseTrace generate_bg_with_labels(const BgParams& pr, std::size_t n,
                                          std::uint64_t seed,
                                          std::vector<std::uint8_t>* labels) {
    validate(pr);
    if (n == 0) throw empty_request_error("bg: requested zero samples");
    NoiseTrace tr;
    tr.seed = seed;
    tr.source = detail::bg_source_tag(pr);
    tr.samples.resize(n);
    if (labels) labels->assign(n, 0);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const bool hit = rng.uniform01() < pr.p;
        double x = pr.sigma_b * rng.normal();
        if (hit) {
            x += pr.sigma_i * rng.normal();
            if (labels) (*labels)[i] = 1;
        }
        tr.samples[i] = x;
    }
    return tr;
}

inline NoiseTrace generate_bg(const BgParams& pr, std::size_t n, std::uint64_t seed) {
    return generate_bg_with_labels(pr, n, seed, nullptr);
}

// Trace variance implied by the parameters: sigma_b^2 + p * sigma_i^2.
inline double bg_variance(const BgParams& pr) {
    validate(pr);
    return pr.sigma_b * pr.sigma_b + pr.p * pr.sigma_i * pr.sigma_i;
}

} // namespace plcnoise
