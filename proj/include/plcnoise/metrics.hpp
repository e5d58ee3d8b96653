#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "plcnoise/errors.hpp"

// Histogram density estimates and the two fitness metrics used throughout:
// a measurement-weighted RMSE and a binned Kullback-Leibler divergence.

namespace plcnoise {

struct EmpiricalPdf {
    std::vector<double> edges;    // bins + 1 ascending edges
    std::vector<double> density;  // per-bin probability density
    std::size_t n_samples = 0;
    double clipped_fraction = 0.0;  // mass that fell outside [lo, hi]

    std::size_t bins() const { return density.size(); }
    double dx() const { return edges[1] - edges[0]; }
    double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
};

namespace detail {

inline std::vector<double> uniform_edges(std::size_t bins, double lo, double hi) {
    if (bins == 0) throw empty_request_error("histogram: zero bins");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw param_error("histogram: need finite lo < hi");
    std::vector<double> edges(bins + 1);
    const double dx = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i)
        edges[i] = lo + dx * static_cast<double>(i);
    edges[bins] = hi;
    return edges;
}

inline void require_same_grid(const EmpiricalPdf& a, const EmpiricalPdf& b) {
    if (a.edges.size() != b.edges.size())
        throw grid_mismatch_error("metrics: histograms have different bin counts");
    const double scale = std::max(std::abs(a.edges.front()), std::abs(a.edges.back()));
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        if (std::abs(a.edges[i] - b.edges[i]) > 1e-9 * std::max(1.0, scale))
            throw grid_mismatch_error("metrics: histograms have different bin edges");
}

} // namespace detail

// Uniform-bin density estimate.  Samples outside [lo, hi] are accumulated
// into the terminal bins so that the density always integrates to exactly
// one; the spilled mass is reported as clipped_fraction.
inline EmpiricalPdf empirical_pdf(std::span<const double> samples, std::size_t bins,
                                  double lo, double hi) {
    EmpiricalPdf h;
    h.edges = detail::uniform_edges(bins, lo, hi);
    if (samples.empty()) throw empty_request_error("histogram: no samples");

    std::vector<std::size_t> counts(bins, 0);
    const double dx = (hi - lo) / static_cast<double>(bins);
    std::size_t clipped = 0;
    for (double x : samples) {
        if (std::isnan(x)) throw param_error("histogram: samples contain NaN");
        std::ptrdiff_t idx;
        if (x < lo) {
            idx = 0;
            ++clipped;
        } else if (x >= hi) {
            idx = static_cast<std::ptrdiff_t>(bins) - 1;
            if (x > hi) ++clipped;
        } else {
            idx = static_cast<std::ptrdiff_t>((x - lo) / dx);
            if (idx >= static_cast<std::ptrdiff_t>(bins)) idx = static_cast<std::ptrdiff_t>(bins) - 1;
        }
        ++counts[static_cast<std::size_t>(idx)];
    }
    if (clipped == samples.size())
        throw empty_histogram_error("histogram: every sample fell outside the range");

    h.n_samples = samples.size();
    h.clipped_fraction = static_cast<double>(clipped) / static_cast<double>(samples.size());
    h.density.resize(bins);
    const double norm = 1.0 / (static_cast<double>(samples.size()) * dx);
    for (std::size_t i = 0; i < bins; ++i)
        h.density[i] = static_cast<double>(counts[i]) * norm;
    return h;
}

// Density histogram of an analytic model evaluated at bin centers.
inline EmpiricalPdf model_pdf_at_centers(const std::function<double(double)>& pdf,
                                         std::size_t bins, double lo, double hi) {
    EmpiricalPdf h;
    h.edges = detail::uniform_edges(bins, lo, hi);
    h.density.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) h.density[i] = pdf(h.center(i));
    return h;
}

// Density histogram of an analytic model using exact bin masses from its CDF;
// the sharper choice when bins are wide compared to the density's features.
inline EmpiricalPdf model_pdf_bin_averaged(const std::function<double(double)>& cdf,
                                           std::size_t bins, double lo, double hi) {
    EmpiricalPdf h;
    h.edges = detail::uniform_edges(bins, lo, hi);
    h.density.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        h.density[i] = (cdf(h.edges[i + 1]) - cdf(h.edges[i])) / h.dx();
    return h;
}

// Measurement-weighted fit error:
//
//   wRMSE = sqrt( sum_i f_meas(x_i) * (f_model(x_i) - f_meas(x_i))^2 * dx ).
//
// Weighting by the measured density focuses the error on regions that carry
// probability mass instead of the empty far tails.
inline double weighted_rmse(const EmpiricalPdf& meas, const EmpiricalPdf& model) {
    detail::require_same_grid(meas, model);
    double acc = 0.0;
    for (std::size_t i = 0; i < meas.bins(); ++i) {
        const double d = model.density[i] - meas.density[i];
        acc += meas.density[i] * d * d * meas.dx();
    }
    return std::sqrt(acc);
}

inline double weighted_rmse(const EmpiricalPdf& meas,
                            const std::function<double(double)>& model_pdf) {
    return weighted_rmse(meas, model_pdf_at_centers(model_pdf, meas.bins(),
                                                    meas.edges.front(), meas.edges.back()));
}

// Binned Kullback-Leibler divergence
//
//   KL(p || q) = sum_{i : p_i > 0} p_i * ln(p_i / max(q_i, 1e-12)) * dx.
//
// The floor keeps bins where the reference sees no mass from producing
// infinities; with it the result is unbounded above but still >= 0 up to
// rounding.  Values are reported as computed, without any further clamping.
inline double kl_divergence(const EmpiricalPdf& p, const EmpiricalPdf& q) {
    detail::require_same_grid(p, q);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.bins(); ++i) {
        const double pi = p.density[i];
        if (pi <= 0.0) continue;
        const double qi = std::max(q.density[i], 1e-12);
        acc += pi * std::log(pi / qi) * p.dx();
    }
    return acc;
}

inline double kl_divergence(const EmpiricalPdf& p,
                            const std::function<double(double)>& model_pdf) {
    return kl_divergence(p, model_pdf_at_centers(model_pdf, p.bins(),
                                                 p.edges.front(), p.edges.back()));
}

} // namespace plcnoise
