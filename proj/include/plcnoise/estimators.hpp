#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "plcnoise/bg_model.hpp"
#include "plcnoise/errors.hpp"
#include "plcnoise/mcculloch_tables.hpp"
#include "plcnoise/sas_model.hpp"

// Stable-law parameter estimators (quantile, regression, and extreme-order
// methods) plus the labeled Bernoulli-Gaussian moment estimator.

namespace plcnoise {

enum class EstimMethod { mcculloch, koutrouvelis, extreme_order };

inline const char* to_string(EstimMethod m) {
    switch (m) {
        case EstimMethod::mcculloch: return "mcculloch";
        case EstimMethod::koutrouvelis: return "koutrouvelis";
        case EstimMethod::extreme_order: return "extreme-order";
    }
    return "?";
}

struct SasEstimate {
    SasParams params;       // beta and delta fixed at 0 in this pipeline
    EstimMethod method = EstimMethod::mcculloch;
    std::size_t n_used = 0;
    double beta_diag = 0.0; // quantile-skewness diagnostic, expected near 0
    std::vector<std::string> flags;
};

struct BgEstimate {
    BgParams params;
    std::size_t n_impulse = 0;
    std::vector<std::string> flags;
};

namespace detail {

// Sample quantiles with linear interpolation between order statistics
// (the common type-7 convention).  Fetches all requested quantiles through
// one chain of nth_element passes over a scratch copy.
inline std::vector<double> sample_quantiles(std::vector<double>& scratch,
                                            std::span<const double> probs) {
    const std::size_t n = scratch.size();
    std::vector<std::size_t> wanted;
    std::vector<double> pos(probs.size());
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const double h = probs[k] * static_cast<double>(n - 1);
        pos[k] = h;
        const auto lo = static_cast<std::size_t>(h);
        wanted.push_back(lo);
        if (lo + 1 < n) wanted.push_back(lo + 1);
    }
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    std::size_t done = 0;
    for (std::size_t idx : wanted) {
        std::nth_element(scratch.begin() + static_cast<std::ptrdiff_t>(done),
                         scratch.begin() + static_cast<std::ptrdiff_t>(idx), scratch.end());
        done = idx + 1;
    }

    std::vector<double> out(probs.size());
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const auto lo = static_cast<std::size_t>(pos[k]);
        const double t = pos[k] - static_cast<double>(lo);
        out[k] = t == 0.0 ? scratch[lo] : scratch[lo] * (1.0 - t) + scratch[lo + 1] * t;
    }
    return out;
}

inline double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

} // namespace detail

// McCulloch's quantile-table estimator.  Quantile spreads nu_alpha and
// nu_beta select (alpha, beta) by bilinear table lookup; the interquartile
// range divided by the tabulated spread nu_c(alpha, |beta|) gives the scale.
inline SasEstimate estimate_mcculloch(std::span<const double> samples) {
    if (samples.size() < 500)
        throw degenerate_sample_error("mcculloch: need at least 500 samples");

    std::vector<double> scratch(samples.begin(), samples.end());
    const double probs[5] = {0.05, 0.25, 0.5, 0.75, 0.95};
    const auto q = detail::sample_quantiles(scratch, probs);
    const double x05 = q[0], x25 = q[1], x50 = q[2], x75 = q[3], x95 = q[4];

    const double iqr = x75 - x25;
    const double outer = x95 - x05;
    if (!(iqr > 0.0))
        throw degenerate_sample_error("mcculloch: interquartile range is zero");

    const double nu_alpha = outer / iqr;
    const double nu_beta = (x95 + x05 - 2.0 * x50) / outer;

    SasEstimate est;
    est.method = EstimMethod::mcculloch;
    est.n_used = samples.size();

    bool clamped = false;
    double alpha = detail::bilinear_lookup(detail::kAlphaTable, detail::kNuAlphaGrid,
                                           detail::kNuBetaGrid, nu_alpha, std::abs(nu_beta),
                                           &clamped);
    double beta = detail::bilinear_lookup(detail::kBetaTable, detail::kNuAlphaGrid,
                                          detail::kNuBetaGrid, nu_alpha, std::abs(nu_beta));
    beta = std::copysign(std::min(beta, 1.0), nu_beta);
    if (nu_alpha < detail::kNuAlphaGrid[0]) est.flags.push_back("nu_alpha_below_table");
    if (nu_alpha > detail::kNuAlphaGrid[14]) est.flags.push_back("nu_alpha_above_table");
    if (clamped && est.flags.empty()) est.flags.push_back("table_lookup_clamped");
    alpha = std::clamp(alpha, 0.5, 2.0);

    const double nu_c = detail::scale_table_lookup(alpha, std::abs(beta));
    est.params.alpha = alpha;
    est.params.beta = 0.0;
    est.params.gamma = iqr / nu_c;
    est.params.delta = 0.0;
    est.beta_diag = beta;
    return est;
}

// Koutrouvelis-style regression estimator.  On data standardized by the
// current scale, ln(-ln |ecf(t)|^2) is linear in ln t with slope alpha and
// intercept ln(2 gamma^alpha); the fit is iterated until the parameters
// settle.  The frequency grid is t_k = pi k / 25 truncated where the model
// predicts the squared ecf to sink below its 100/N noise floor (10 to 134
// points), a documented stand-in for the original's lookup table.
inline SasEstimate estimate_koutrouvelis(std::span<const double> samples) {
    if (samples.size() < 1000)
        throw degenerate_sample_error("koutrouvelis: need at least 1000 samples");
    const double n = static_cast<double>(samples.size());
    const double pi = 3.14159265358979323846;

    std::vector<double> scratch(samples.begin(), samples.end());
    const double probs[3] = {0.25, 0.5, 0.75};
    const auto q = detail::sample_quantiles(scratch, probs);
    const double iqr = q[2] - q[0];
    if (!(iqr > 0.0))
        throw degenerate_sample_error("koutrouvelis: interquartile range is zero");

    // Center once; symmetric scope, so the median is the location estimate.
    std::vector<double> xs(samples.begin(), samples.end());
    for (double& x : xs) x -= q[1];

    double alpha = 1.8;
    double gamma = iqr / 1.95;

    SasEstimate est;
    est.method = EstimMethod::koutrouvelis;
    est.n_used = samples.size();

    bool converged = false;
    for (int iter = 0; iter < 10 && !converged; ++iter) {
        const double t_noise = std::pow(std::log(n / 100.0) / 2.0, 1.0 / alpha);
        const std::size_t kpts =
            std::clamp<std::size_t>(static_cast<std::size_t>(25.0 * t_noise / pi), 10, 134);

        // Squared ecf modulus on the harmonic grid t_k = k*t1 over the
        // standardized data, via the cosine/sine recurrences.
        const double t1 = pi / 25.0;
        std::vector<double> cs(kpts, 0.0), sn(kpts, 0.0);
        for (double x : xs) {
            const double th = t1 * x / gamma;
            const double c1 = std::cos(th), s1 = std::sin(th);
            double ck1 = 1.0, sk1 = 0.0;  // cos/sin of (k-1) th
            double ck = c1, sk = s1;
            for (std::size_t k = 0; k < kpts; ++k) {
                cs[k] += ck;
                sn[k] += sk;
                const double cn = 2.0 * c1 * ck - ck1;
                const double snx = 2.0 * c1 * sk - sk1;
                ck1 = ck;
                sk1 = sk;
                ck = cn;
                sk = snx;
            }
        }

        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::size_t used = 0;
        for (std::size_t k = 0; k < kpts; ++k) {
            const double mod2 =
                (cs[k] * cs[k] + sn[k] * sn[k]) / (n * n);
            if (!(mod2 > 0.0) || mod2 >= 1.0) continue;
            const double lx = std::log(t1 * static_cast<double>(k + 1));
            const double ly = std::log(-std::log(mod2));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++used;
        }
        if (used < 5)
            throw degenerate_sample_error("koutrouvelis: too few usable frequencies");

        const double du = static_cast<double>(used);
        const double denom = du * sxx - sx * sx;
        if (denom == 0.0)
            throw degenerate_sample_error("koutrouvelis: degenerate regression grid");
        double alpha_new = (du * sxy - sx * sy) / denom;
        const double intercept = (sy - alpha_new * sx) / du;

        bool clamped = false;
        if (alpha_new > 2.0) {
            alpha_new = 2.0;
            clamped = true;
        } else if (alpha_new < 0.1) {
            alpha_new = 0.1;
            clamped = true;
        }
        const double gamma_new = gamma * std::exp((intercept - std::log(2.0)) / alpha_new);

        converged = std::abs(alpha_new - alpha) + std::abs(gamma_new - gamma) / gamma < 1e-4;
        alpha = alpha_new;
        gamma = gamma_new;
        if (clamped && iter == 9) est.flags.push_back("alpha_clamped");
    }
    if (!converged) est.flags.push_back("non_convergent");

    est.params.alpha = alpha;
    est.params.beta = 0.0;
    est.params.gamma = gamma;
    est.params.delta = 0.0;
    return est;
}

// Extreme-order-statistics estimator (Tsihrintzis & Nikias 1996): the log
// of per-segment maxima of stable data is asymptotically Gumbel-like with
// scale 1/alpha, so alpha is read off the spread of log extremes, averaged
// over the max and min tails.  segment_count = 0 selects floor(sqrt(N)).
// Only alpha is estimated; gamma is reported as 1 with a flag.
inline SasEstimate estimate_extreme_order(std::span<const double> samples,
                                          std::size_t segment_count = 0) {
    if (samples.size() < 4)
        throw degenerate_sample_error("extreme-order: need at least 4 samples");
    std::size_t segs = segment_count;
    if (segs == 0)
        segs = static_cast<std::size_t>(std::sqrt(static_cast<double>(samples.size())));
    if (segs < 2) throw segmentation_error("extreme-order: need at least 2 segments");
    const std::size_t seg_len = samples.size() / segs;
    if (seg_len < 2)
        throw segmentation_error("extreme-order: segments shorter than 2 samples");

    std::vector<double> log_max, log_min;
    log_max.reserve(segs);
    log_min.reserve(segs);
    for (std::size_t s = 0; s < segs; ++s) {
        double hi = samples[s * seg_len], lo = hi;
        for (std::size_t i = 1; i < seg_len; ++i) {
            const double x = samples[s * seg_len + i];
            hi = std::max(hi, x);
            lo = std::min(lo, x);
        }
        if (hi > 0.0) log_max.push_back(std::log(hi));
        if (lo < 0.0) log_min.push_back(std::log(-lo));
    }
    if (log_max.size() < 2 || log_min.size() < 2)
        throw degenerate_sample_error("extreme-order: a tail produced no extremes");

    const double pi = 3.14159265358979323846;
    const double from_max = pi / (std::sqrt(6.0) * detail::sample_sd(log_max));
    const double from_min = pi / (std::sqrt(6.0) * detail::sample_sd(log_min));
    double alpha = 0.5 * (from_max + from_min);

    SasEstimate est;
    est.method = EstimMethod::extreme_order;
    est.n_used = segs * seg_len;
    if (alpha > 2.0) {
        alpha = 2.0;
        est.flags.push_back("alpha_clamped");
    }
    est.params.alpha = alpha;
    est.params.beta = 0.0;
    est.params.gamma = 1.0;
    est.params.delta = 0.0;
    est.flags.push_back("gamma_not_estimated");
    return est;
}

// Moment estimator for labeled Bernoulli-Gaussian data: p from the label
// fraction, sigma_b from the background class, and sigma_i from the excess
// variance of the impulse class.
inline BgEstimate estimate_bg_labeled(std::span<const double> samples,
                                      std::span<const std::uint8_t> labels) {
    if (samples.empty()) throw empty_request_error("bg-labeled: no samples");
    if (samples.size() != labels.size())
        throw param_error("bg-labeled: labels length must match trace length");

    std::vector<double> bg, imp;
    for (std::size_t i = 0; i < samples.size(); ++i)
        (labels[i] ? imp : bg).push_back(samples[i]);

    BgEstimate est;
    est.n_impulse = imp.size();
    est.params.p = static_cast<double>(imp.size()) / static_cast<double>(samples.size());

    const double sd_bg = detail::sample_sd(bg);
    est.params.sigma_b = sd_bg;
    if (bg.size() < 2) est.flags.push_back("no_background_class");

    if (imp.size() < 2) {
        est.params.sigma_i = 0.0;
        est.flags.push_back("no_impulse_class");
    } else {
        const double sd_imp = detail::sample_sd(imp);
        const double excess = sd_imp * sd_imp - sd_bg * sd_bg;
        est.params.sigma_i = std::sqrt(std::max(excess, 0.0));
        if (excess < 0.0) est.flags.push_back("impulse_variance_below_background");
    }
    return est;
}

// Threshold-based impulse labeling: marks |x| > mult * sigma_hat where
// sigma_hat is the MAD-based robust background scale (MAD / 0.6745).
inline std::vector<std::uint8_t> label_by_threshold(std::span<const double> samples,
                                                    double mult) {
    if (samples.empty()) throw empty_request_error("label_by_threshold: no samples");
    if (!(mult > 0.0)) throw param_error("label_by_threshold: multiplier must be > 0");

    std::vector<double> mag(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) mag[i] = std::abs(samples[i]);
    std::vector<double> scratch = mag;
    const double probs[1] = {0.5};
    const double mad = detail::sample_quantiles(scratch, probs)[0];
    // |x| median of a centered normal is 0.6745 sigma.
    const double sigma = mad / 0.6744897501960817;
    if (!(sigma > 0.0))
        throw degenerate_sample_error("label_by_threshold: zero robust scale");

    std::vector<std::uint8_t> labels(samples.size(), 0);
    for (std::size_t i = 0; i < samples.size(); ++i)
        labels[i] = mag[i] > mult * sigma ? 1 : 0;
    return labels;
}

} // namespace plcnoise
