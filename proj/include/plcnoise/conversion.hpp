#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "plcnoise/bg_model.hpp"
#include "plcnoise/errors.hpp"
#include "plcnoise/estimators.hpp"
#include "plcnoise/format.hpp"
#include "plcnoise/metrics.hpp"
#include "plcnoise/rng.hpp"
#include "plcnoise/sas_model.hpp"

// BG-to-SaS model conversion: fit stable parameters to power-normalized
// Bernoulli-Gaussian traces across the PLC parameter plane (impulse ratio p,
// impulse-to-background ratio in dB), and compress the resulting landscape
// into (2,2)-polynomial surfaces for fast evaluation.

namespace plcnoise {

enum class SurfaceTarget { alpha_hat, gamma_hat };

inline const char* to_string(SurfaceTarget t) {
    return t == SurfaceTarget::alpha_hat ? "alpha_hat" : "gamma_hat";
}

// f(x, y) = c00 + c10 x + c01 y + c20 x^2 + c11 xy + c02 y^2 with x = p and
// y = 20 log10(sigma_i / sigma_b).  Surfaces are fitted over (and meant for)
// p in [1e-4, 1e-2] and y in [10, 30] dB; evaluation outside that box is
// extrapolation and is flagged as such.
struct PolySurface {
    double c00 = 0, c10 = 0, c01 = 0, c20 = 0, c11 = 0, c02 = 0;
    SurfaceTarget target = SurfaceTarget::alpha_hat;
    double fit_rmse = 0.0;
};

constexpr double kSurfaceDomainPMin = 1e-4;
constexpr double kSurfaceDomainPMax = 1e-2;
constexpr double kSurfaceDomainDbMin = 10.0;
constexpr double kSurfaceDomainDbMax = 30.0;

struct ConversionCell {
    double p = 0.0;
    double ratio_db = 0.0;
    double alpha_hat = 0.0;
    double gamma_hat = 0.0;
    double kl = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

inline double poly_eval(const PolySurface& s, double p, double ratio_db,
                        bool* extrapolated = nullptr) {
    if (extrapolated)
        *extrapolated = p < kSurfaceDomainPMin || p > kSurfaceDomainPMax ||
                        ratio_db < kSurfaceDomainDbMin || ratio_db > kSurfaceDomainDbMax;
    const double x = p, y = ratio_db;
    return s.c00 + s.c10 * x + s.c01 * y + s.c20 * x * x + s.c11 * x * y + s.c02 * y * y;
}

// Fitted constants for the fast conversion surfaces (alpha first, gamma
// second), obtained from a 5e6-samples-per-cell sweep of the procedure in
// convert_cell over the documented domain.
inline std::pair<PolySurface, PolySurface> builtin_surfaces() {
    PolySurface a;
    a.c00 = 2.005;
    a.c10 = -1.457;
    a.c01 = -5.575e-4;
    a.c20 = -40.36;
    a.c11 = -0.1128;
    a.c02 = 1.426e-5;
    a.target = SurfaceTarget::alpha_hat;
    a.fit_rmse = 1.715e-3;

    PolySurface g;
    g.c00 = 0.5779;
    g.c10 = 6.256;
    g.c01 = 0.01707;
    g.c20 = 2123.0;
    g.c11 = -2.43;
    g.c02 = -5.249e-4;
    g.target = SurfaceTarget::gamma_hat;
    g.fit_rmse = 2.433e-2;
    return {a, g};
}

// One conversion experiment: draw BG(p, 1, sigma_i per ratio_db), normalize
// to unit sample power (or analytic power when analytic_power is set), fit
// stable parameters by the quantile method, draw a matched-size SaS trace
// from the fit, and report kl(BG empirical || SaS empirical) on a shared
// 401-bin grid over +/- 8 (unit-power amplitude units).  Generation seeds
// derive from `seed` with stream ids 0 (BG) and 1 (SaS).
inline ConversionCell convert_cell(double p, double ratio_db, std::size_t n,
                                   std::uint64_t seed, bool analytic_power = false) {
    if (!(p > 0.0) || !(p < 1.0))
        throw param_error("convert: p must lie strictly inside (0, 1)");
    if (!(ratio_db >= 0.0)) throw param_error("convert: ratio_db must be >= 0");
    if (n < 100000) throw param_error("convert: need at least 100000 samples");

    BgParams pr{p, 1.0, std::pow(10.0, ratio_db / 20.0)};
    auto trace = generate_bg(pr, n, derive_seed(seed, 0));

    double power = 0.0;
    if (analytic_power) {
        power = bg_variance(pr);
    } else {
        for (double x : trace.samples) power += x * x;
        power /= static_cast<double>(n);
    }
    if (!(power > 0.0)) throw degenerate_sample_error("convert: zero-power trace");
    const double inv_rms = 1.0 / std::sqrt(power);
    for (double& x : trace.samples) x *= inv_rms;

    const auto est = estimate_mcculloch(trace.samples);
    const auto fitted = generate_sas(est.params, n, derive_seed(seed, 1));

    const auto emp_bg = empirical_pdf(trace.samples, 401, -8.0, 8.0);
    const auto emp_sas = empirical_pdf(fitted.samples, 401, -8.0, 8.0);

    ConversionCell cell;
    cell.p = p;
    cell.ratio_db = ratio_db;
    cell.alpha_hat = est.params.alpha;
    cell.gamma_hat = est.params.gamma;
    cell.kl = kl_divergence(emp_bg, emp_sas);
    cell.n = n;
    cell.seed = seed;
    return cell;
}

// Cross-product sweep in grid order (p outer, ratio inner).  Cell seeds are
// `seed` XOR the row-major cell index, so a single-cell sweep reproduces
// convert_cell with the same seed.
inline std::vector<ConversionCell> conversion_sweep(const std::vector<double>& p_grid,
                                                    const std::vector<double>& ratio_grid,
                                                    std::size_t n, std::uint64_t seed,
                                                    bool analytic_power = false) {
    if (p_grid.empty() || ratio_grid.empty())
        throw empty_request_error("conversion sweep: empty grid");

    std::vector<ConversionCell> out;
    out.reserve(p_grid.size() * ratio_grid.size());
    for (std::size_t ip = 0; ip < p_grid.size(); ++ip)
        for (std::size_t ir = 0; ir < ratio_grid.size(); ++ir) {
            const std::uint64_t idx = ip * ratio_grid.size() + ir;
            out.push_back(
                convert_cell(p_grid[ip], ratio_grid[ir], n, seed ^ idx, analytic_power));
        }
    return out;
}

inline std::string conversion_sweep_csv(const std::vector<ConversionCell>& cells) {
    std::string csv = "p,ratio_db,alpha_hat,gamma_hat,kl,n,seed\n";
    for (const auto& c : cells) {
        csv += detail::format_double(c.p);
        csv += ',';
        csv += detail::format_double(c.ratio_db);
        csv += ',';
        csv += detail::format_double(c.alpha_hat);
        csv += ',';
        csv += detail::format_double(c.gamma_hat);
        csv += ',';
        csv += detail::format_double(c.kl);
        csv += ',';
        csv += detail::format_u64(c.n);
        csv += ',';
        csv += detail::format_u64(c.seed);
        csv += '\n';
    }
    return csv;
}

// Least-squares fit of the 6-coefficient surface to the chosen target over
// the given cells.  Columns are rescaled to unit max before forming the
// normal equations (x = p is ~1e-3 while y^2 is ~1e2 in the PLC domain), and
// the scaled system is solved by Cholesky; a failed pivot reports the design
// as rank-deficient.
inline PolySurface fit_poly_surface(const std::vector<ConversionCell>& cells,
                                    SurfaceTarget target) {
    constexpr std::size_t k = 6;
    if (cells.size() < k)
        throw singular_fit_error("surface fit: need at least 6 cells");

    auto basis = [](double x, double y) {
        return std::array<double, k>{1.0, x, y, x * x, x * y, y * y};
    };

    std::array<double, k> scale{};
    for (const auto& c : cells) {
        const auto b = basis(c.p, c.ratio_db);
        for (std::size_t j = 0; j < k; ++j) scale[j] = std::max(scale[j], std::abs(b[j]));
    }
    for (double s : scale)
        if (!(s > 0.0)) throw singular_fit_error("surface fit: degenerate basis column");

    // Normal equations in the scaled basis.
    std::array<std::array<double, k>, k> gram{};
    std::array<double, k> rhs{};
    for (const auto& c : cells) {
        auto b = basis(c.p, c.ratio_db);
        for (std::size_t j = 0; j < k; ++j) b[j] /= scale[j];
        const double t = target == SurfaceTarget::alpha_hat ? c.alpha_hat : c.gamma_hat;
        for (std::size_t i = 0; i < k; ++i) {
            rhs[i] += b[i] * t;
            for (std::size_t j = 0; j <= i; ++j) gram[i][j] += b[i] * b[j];
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) gram[i][j] = gram[j][i];

    // Cholesky factorization, gram = L L^T.
    std::array<std::array<double, k>, k> chol{};
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = gram[i][j];
            for (std::size_t m = 0; m < j; ++m) s -= chol[i][m] * chol[j][m];
            if (i == j) {
                if (!(s > 1e-10 * gram[i][i]) || !(s > 0.0))
                    throw singular_fit_error("surface fit: rank-deficient design");
                chol[i][i] = std::sqrt(s);
            } else {
                chol[i][j] = s / chol[j][j];
            }
        }
    }

    // Forward and back substitution.
    std::array<double, k> z{};
    for (std::size_t i = 0; i < k; ++i) {
        double s = rhs[i];
        for (std::size_t m = 0; m < i; ++m) s -= chol[i][m] * z[m];
        z[i] = s / chol[i][i];
    }
    std::array<double, k> coef{};
    for (std::size_t ii = k; ii-- > 0;) {
        double s = z[ii];
        for (std::size_t m = ii + 1; m < k; ++m) s -= chol[m][ii] * coef[m];
        coef[ii] = s / chol[ii][ii];
    }
    for (std::size_t j = 0; j < k; ++j) coef[j] /= scale[j];

    PolySurface out;
    out.c00 = coef[0];
    out.c10 = coef[1];
    out.c01 = coef[2];
    out.c20 = coef[3];
    out.c11 = coef[4];
    out.c02 = coef[5];
    out.target = target;

    double ss = 0.0;
    for (const auto& c : cells) {
        const double t = target == SurfaceTarget::alpha_hat ? c.alpha_hat : c.gamma_hat;
        const double r = poly_eval(out, c.p, c.ratio_db) - t;
        ss += r * r;
    }
    out.fit_rmse = std::sqrt(ss / static_cast<double>(cells.size()));
    return out;
}

} // namespace plcnoise
