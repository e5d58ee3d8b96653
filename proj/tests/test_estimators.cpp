#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "plcnoise/bg_model.hpp"
#include "plcnoise/errors.hpp"
#include "plcnoise/estimators.hpp"
#include "plcnoise/mcculloch_tables.hpp"
#include "plcnoise/rng.hpp"
#include "plcnoise/sas_model.hpp"

#include "oracles.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

bool has_flag(const std::vector<std::string>& flags, const std::string& f) {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

// Quantiles of SaS(alpha, gamma=1, delta=0) computed from the numerically
// inverted characteristic function: trapezoid CDF on a wide fine grid with an
// asymptotic power-law correction for the mass beyond the grid.  Used as an
// independent cross-check of the quantile-spread tables.
struct QuantSet {
    double x05 = 0, x25 = 0, x75 = 0, x95 = 0;
    double nu_alpha() const { return (x95 - x05) / (x75 - x25); }
    double iqr() const { return x75 - x25; }
};

QuantSet sas_numeric_quantiles(double alpha) {
    const double half = 150.0;
    const double dx = 0.005;
    const auto npts = static_cast<std::size_t>(std::llround(2.0 * half / dx)) + 1;
    std::vector<double> grid(npts);
    for (std::size_t i = 0; i < npts; ++i) grid[i] = -half + dx * static_cast<double>(i);

    plcnoise::SasParams pr;
    pr.alpha = alpha;
    const auto pdf = plcnoise::sas_pdf(pr, grid);

    // Mass beyond +/-half: stable tail ~ gamma^a sin(pi a/2) Gamma(a)/pi * x^-a,
    // Gaussian complement at alpha = 2.
    const double tail = alpha < 2.0 ? std::sin(kPi * alpha / 2.0) * std::tgamma(alpha) / kPi *
                                          std::pow(half, -alpha)
                                    : 0.5 * std::erfc(half / 2.0);
    std::vector<double> cdf(npts);
    cdf[0] = tail;
    for (std::size_t i = 1; i < npts; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (pdf[i - 1] + pdf[i]) * dx;

    auto invert = [&](double q) {
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), q);
        REQUIRE(it != cdf.begin());
        REQUIRE(it != cdf.end());
        const auto i = static_cast<std::size_t>(it - cdf.begin());
        const double t = (q - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
        return grid[i - 1] + t * dx;
    };
    return {invert(0.05), invert(0.25), invert(0.75), invert(0.95)};
}

std::span<const double> prefix(const std::vector<double>& v, std::size_t n) {
    return {v.data(), n};
}

double mean_abs_dev(const std::vector<double>& v, double target) {
    double s = 0.0;
    for (double x : v) s += std::abs(x - target);
    return s / static_cast<double>(v.size());
}

} // namespace

TEST_CASE("sample quantiles match the sort-based definition", "[estimators]") {
    plcnoise::Rng rng(424242);
    for (std::size_t n : {7u, 100u, 101u, 1000u}) {
        std::vector<double> xs(n);
        for (auto& x : xs) x = rng.normal() + 0.3 * rng.exponential();

        std::vector<double> sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        const double probs[5] = {0.05, 0.25, 0.5, 0.75, 0.95};

        std::vector<double> scratch = xs;
        const auto got = plcnoise::detail::sample_quantiles(scratch, probs);
        for (std::size_t k = 0; k < 5; ++k) {
            const double h = probs[k] * static_cast<double>(n - 1);
            const auto lo = static_cast<std::size_t>(h);
            const double t = h - static_cast<double>(lo);
            const double want =
                t == 0.0 ? sorted[lo] : sorted[lo] * (1.0 - t) + sorted[lo + 1] * t;
            REQUIRE(got[k] == Catch::Approx(want).margin(1e-12));
        }
    }
}

TEST_CASE("quantile-spread tables hit their closed-form anchors", "[estimators]") {
    using namespace plcnoise::detail;

    // Gaussian: nu_alpha = 2*Phi^-1(.95)/(2*Phi^-1(.75)), scale spread for
    // N(0, 2 gamma^2) is 2*Phi^-1(.75)*sqrt(2) ~ 1.9078.
    const double z95 = 1.6448536269514722;
    const double z75 = 0.6744897501960817;
    const double nu_gauss = z95 / z75;
    REQUIRE(nu_gauss == Catch::Approx(2.4387).margin(5e-4));
    REQUIRE(bilinear_lookup(kAlphaTable, kNuAlphaGrid, kNuBetaGrid, nu_gauss, 0.0) ==
            Catch::Approx(2.0).margin(2e-3));
    REQUIRE(scale_table_lookup(2.0, 0.0) == Catch::Approx(2.0 * z75 * std::sqrt(2.0)).margin(1e-3));

    // Cauchy: quartiles at -/+ gamma, so the spread is exactly 2.
    REQUIRE(scale_table_lookup(1.0, 0.0) == Catch::Approx(2.0).margin(1e-9));

    // Symmetry column of the skew table is identically zero.
    for (std::size_t r = 0; r < 15; ++r) REQUIRE(kBetaTable[r][0] == 0.0);

    // Lookups at exact nodes return the stored entries.
    REQUIRE(bilinear_lookup(kAlphaTable, kNuAlphaGrid, kNuBetaGrid, 3.0, 0.0) ==
            Catch::Approx(1.563).margin(1e-12));
    REQUIRE(bilinear_lookup(kAlphaTable, kNuAlphaGrid, kNuBetaGrid, 5.0, 0.0) ==
            Catch::Approx(1.128).margin(1e-12));

    // Out-of-range coordinates clamp and raise the flag.
    bool clamped = false;
    (void)bilinear_lookup(kAlphaTable, kNuAlphaGrid, kNuBetaGrid, 1.9, 0.0, &clamped);
    REQUIRE(clamped);
    clamped = false;
    (void)bilinear_lookup(kAlphaTable, kNuAlphaGrid, kNuBetaGrid, 30.0, 0.0, &clamped);
    REQUIRE(clamped);
}

TEST_CASE("quantile tables agree with numerically inverted stable quantiles",
          "[estimators][slow]") {
    using namespace plcnoise::detail;

    // Scan alpha over [0.98, 2.00]; the scan covers every table node the
    // symmetric pipeline can reach (estimates below alpha = 1 would need
    // nu_alpha > 6.3, far outside the BG/SaS regime exercised here).
    std::vector<double> alphas, nus, iqrs;
    for (int j = 0; j <= 51; ++j) {
        const double a = 0.98 + 0.02 * j;
        const auto q = sas_numeric_quantiles(a);
        alphas.push_back(a);
        nus.push_back(q.nu_alpha());
        iqrs.push_back(q.iqr());
    }

    // Scale-spread table, beta = 0 column, rows alpha = 2.0 down to 1.0.
    for (std::size_t row = 0; row <= 10; ++row) {
        const double a = 2.0 - 0.1 * static_cast<double>(row);
        const auto j = static_cast<std::size_t>(std::llround((a - 0.98) / 0.02));
        REQUIRE(alphas[j] == Catch::Approx(a).margin(1e-12));
        INFO("scale row alpha=" << a);
        REQUIRE(iqrs[j] == Catch::Approx(kScaleTable[row][0]).margin(0.012));
    }

    // Alpha table, beta = 0 column: invert the computed nu_alpha(alpha) curve
    // at the table's nu nodes (nu increases as alpha falls).
    for (std::size_t row = 0; row <= 10; ++row) {
        const double nu = kNuAlphaGrid[row];
        std::size_t j = alphas.size() - 1; // alpha = 2.00, smallest nu
        while (j > 0 && nus[j - 1] < nu) --j;
        REQUIRE(j > 0);
        const double t = (nu - nus[j]) / (nus[j - 1] - nus[j]);
        const double a_true = alphas[j] + t * (alphas[j - 1] - alphas[j]);
        INFO("alpha row nu=" << nu);
        REQUIRE(a_true == Catch::Approx(kAlphaTable[row][0]).margin(0.012));
    }
}

TEST_CASE("mcculloch recovers the Gaussian boundary", "[estimators][slow]") {
    const auto xs = oracle::std_bg_samples(0.0, 1.0, 0.0, 1000000, 20260101u);
    const auto est = plcnoise::estimate_mcculloch(xs);
    REQUIRE(est.method == plcnoise::EstimMethod::mcculloch);
    REQUIRE(est.n_used == xs.size());
    REQUIRE(est.params.alpha >= 1.95);
    REQUIRE(est.params.alpha <= 2.0);
    // N(0,1) is stable with gamma = 1/sqrt(2) under this scale convention.
    REQUIRE(est.params.gamma == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));
    REQUIRE(std::abs(est.beta_diag) <= 0.1);
    REQUIRE(est.params.beta == 0.0);
    REQUIRE(est.params.delta == 0.0);
}

TEST_CASE("mcculloch recovers Cauchy parameters from an independent sampler",
          "[estimators][slow]") {
    const auto xs = oracle::std_cauchy_samples(1000000, 31u);
    const auto est = plcnoise::estimate_mcculloch(xs);
    REQUIRE(est.params.alpha == Catch::Approx(1.0).margin(0.03));
    REQUIRE(est.params.gamma == Catch::Approx(1.0).margin(0.03));
    REQUIRE(std::abs(est.beta_diag) <= 0.1);
}

TEST_CASE("mcculloch round-trips generated stable traces", "[estimators][slow]") {
    for (double a : {1.2, 1.5, 1.8}) {
        plcnoise::SasParams pr;
        pr.alpha = a;
        pr.gamma = 1.0;
        const auto trace = plcnoise::generate_sas(pr, 1000000, 7000 + static_cast<unsigned>(a * 10));
        const auto est = plcnoise::estimate_mcculloch(trace.samples);
        INFO("alpha=" << a);
        REQUIRE(est.params.alpha == Catch::Approx(a).margin(0.05));
        REQUIRE(est.params.gamma == Catch::Approx(1.0).epsilon(0.05));
        REQUIRE(std::abs(est.beta_diag) <= 0.1);
    }
}

TEST_CASE("koutrouvelis matches known laws and round-trips", "[estimators][slow]") {
    SECTION("gaussian") {
        const auto xs = oracle::std_bg_samples(0.0, 1.0, 0.0, 1000000, 555u);
        const auto est = plcnoise::estimate_koutrouvelis(xs);
        REQUIRE(est.method == plcnoise::EstimMethod::koutrouvelis);
        REQUIRE(est.params.alpha >= 1.9);
        REQUIRE(est.params.alpha <= 2.0);
        REQUIRE(est.params.gamma == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(0.03));
        REQUIRE_FALSE(has_flag(est.flags, "non_convergent"));
    }
    SECTION("cauchy") {
        const auto xs = oracle::std_cauchy_samples(1000000, 77u);
        const auto est = plcnoise::estimate_koutrouvelis(xs);
        REQUIRE(est.params.alpha == Catch::Approx(1.0).margin(0.05));
        REQUIRE(est.params.gamma == Catch::Approx(1.0).epsilon(0.05));
    }
    SECTION("sas 1.7 round trip") {
        plcnoise::SasParams pr;
        pr.alpha = 1.7;
        const auto trace = plcnoise::generate_sas(pr, 1000000, 1717u);
        const auto est = plcnoise::estimate_koutrouvelis(trace.samples);
        REQUIRE(est.params.alpha == Catch::Approx(1.7).margin(0.05));
        REQUIRE(est.params.gamma == Catch::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("mcculloch and koutrouvelis agree on identical stable inputs",
          "[estimators][slow]") {
    for (double a : {1.2, 1.5, 1.8, 2.0}) {
        plcnoise::SasParams pr;
        pr.alpha = a;
        const auto trace =
            plcnoise::generate_sas(pr, 1000000, plcnoise::derive_seed(808, static_cast<unsigned>(a * 100)));
        const auto em = plcnoise::estimate_mcculloch(trace.samples);
        const auto ek = plcnoise::estimate_koutrouvelis(trace.samples);
        INFO("alpha=" << a);
        REQUIRE(std::abs(em.params.alpha - ek.params.alpha) < 0.1);
    }
}

TEST_CASE("estimates sharpen as the trace grows", "[estimators][slow]") {
    // Mean absolute error over 20 seeds must fall with each tenfold size
    // step, for both estimators and both parameters.  Prefixes of one long
    // trace are themselves iid stable samples, so each seed is generated once.
    const std::size_t sizes[3] = {10000, 100000, 1000000};
    plcnoise::SasParams pr;
    pr.alpha = 1.5;

    std::vector<double> am[3], gm[3], ak[3], gk[3];
    for (unsigned seed = 0; seed < 20; ++seed) {
        const auto trace = plcnoise::generate_sas(pr, 1000000, plcnoise::derive_seed(4242, seed));
        for (int s = 0; s < 3; ++s) {
            const auto view = prefix(trace.samples, sizes[s]);
            const auto em = plcnoise::estimate_mcculloch(view);
            const auto ek = plcnoise::estimate_koutrouvelis(view);
            am[s].push_back(em.params.alpha);
            gm[s].push_back(em.params.gamma);
            ak[s].push_back(ek.params.alpha);
            gk[s].push_back(ek.params.gamma);
        }
    }
    for (int s = 0; s < 2; ++s) {
        INFO("size step " << sizes[s] << " -> " << sizes[s + 1]);
        REQUIRE(mean_abs_dev(am[s + 1], 1.5) < mean_abs_dev(am[s], 1.5));
        REQUIRE(mean_abs_dev(gm[s + 1], 1.0) < mean_abs_dev(gm[s], 1.0));
        REQUIRE(mean_abs_dev(ak[s + 1], 1.5) < mean_abs_dev(ak[s], 1.5));
        REQUIRE(mean_abs_dev(gk[s + 1], 1.0) < mean_abs_dev(gk[s], 1.0));
    }
}

TEST_CASE("extreme-order estimator on genuinely stable and Gaussian data",
          "[estimators][slow]") {
    SECTION("sas 1.5") {
        plcnoise::SasParams pr;
        pr.alpha = 1.5;
        const auto trace = plcnoise::generate_sas(pr, 1000000, 1501u);
        const auto est = plcnoise::estimate_extreme_order(trace.samples);
        REQUIRE(est.method == plcnoise::EstimMethod::extreme_order);
        REQUIRE(est.params.alpha == Catch::Approx(1.5).margin(0.1));
        REQUIRE(est.params.gamma == 1.0);
        REQUIRE(has_flag(est.flags, "gamma_not_estimated"));
    }
    SECTION("gaussian clamps at the stable boundary") {
        const auto xs = oracle::std_bg_samples(0.0, 1.0, 0.0, 1000000, 909u);
        const auto est = plcnoise::estimate_extreme_order(xs);
        REQUIRE(est.params.alpha == Catch::Approx(2.0).margin(0.15));
        REQUIRE(est.params.alpha == 2.0); // light tails drive the raw value far above 2
        REQUIRE(has_flag(est.flags, "alpha_clamped"));
    }
}

TEST_CASE("extreme-order estimator drifts on impulsive mixtures but not on stable data",
          "[estimators][slow]") {
    // On a PLC-regime Bernoulli-Gaussian input the per-segment extremes keep
    // changing character as the trace grows, so alpha-hat wanders.  On the
    // matched stable law (alpha taken from the quantile fit of that same BG
    // input, here ~1.94) it stays put.  The matched alpha matters: the
    // extreme-order method carries a sizeable small-segment bias at mid
    // alpha, so an unmatched alpha = 1.5 input would not show a sub-0.1
    // spread at these sizes.
    plcnoise::BgParams bg{0.01, 1.0, std::pow(10.0, 1.5)};

    const auto fit_input = plcnoise::generate_bg(bg, 1000000, 3099u);
    plcnoise::SasParams sas;
    sas.alpha = plcnoise::estimate_mcculloch(fit_input.samples).params.alpha;
    REQUIRE(sas.alpha == Catch::Approx(1.94).margin(0.05));

    std::vector<double> a_bg, a_sas;
    for (std::size_t n : {10000u, 100000u, 1000000u}) {
        const auto tb = plcnoise::generate_bg(bg, n, plcnoise::derive_seed(3100, n));
        const auto ts = plcnoise::generate_sas(sas, n, plcnoise::derive_seed(3200, n));
        a_bg.push_back(plcnoise::estimate_extreme_order(tb.samples).params.alpha);
        a_sas.push_back(plcnoise::estimate_extreme_order(ts.samples).params.alpha);
    }
    const auto [bg_lo, bg_hi] = std::minmax_element(a_bg.begin(), a_bg.end());
    const auto [s_lo, s_hi] = std::minmax_element(a_sas.begin(), a_sas.end());
    INFO("bg alphas " << a_bg[0] << " " << a_bg[1] << " " << a_bg[2]);
    INFO("sas alphas " << a_sas[0] << " " << a_sas[1] << " " << a_sas[2]);
    REQUIRE(*bg_hi - *bg_lo > 0.2);
    REQUIRE(*s_hi - *s_lo < 0.1);
}

TEST_CASE("labeled BG estimation recovers generator parameters", "[estimators][slow]") {
    plcnoise::BgParams pr{0.01, 1.0, 30.0};
    std::vector<std::uint8_t> labels;
    const auto trace = plcnoise::generate_bg_with_labels(pr, 1000000, 26012u, &labels);

    const auto est = plcnoise::estimate_bg_labeled(trace.samples, labels);
    REQUIRE(est.params.p == Catch::Approx(0.01).margin(0.001));
    REQUIRE(est.params.sigma_b == Catch::Approx(1.0).margin(0.01));
    REQUIRE(est.params.sigma_i == Catch::Approx(30.0).margin(0.5));
    REQUIRE(est.n_impulse == static_cast<std::size_t>(est.params.p * 1000000 + 0.5));
    REQUIRE(est.flags.empty());

    // Threshold labeling at 5 sigma misses small impulses but stays within
    // 20% of the true impulse ratio at this power ratio.
    const auto th_labels = plcnoise::label_by_threshold(trace.samples, 5.0);
    const auto est2 = plcnoise::estimate_bg_labeled(trace.samples, th_labels);
    REQUIRE(est2.params.p == Catch::Approx(0.01).epsilon(0.2));
    REQUIRE(est2.params.sigma_b == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("labeled BG estimation handles single-class inputs", "[estimators]") {
    plcnoise::Rng rng(11);
    std::vector<double> xs(5000);
    for (auto& x : xs) x = 2.0 * rng.normal();

    SECTION("all background") {
        std::vector<std::uint8_t> labels(xs.size(), 0);
        const auto est = plcnoise::estimate_bg_labeled(xs, labels);
        REQUIRE(est.params.p == 0.0);
        REQUIRE(est.n_impulse == 0);
        REQUIRE(est.params.sigma_b == Catch::Approx(2.0).epsilon(0.05));
        REQUIRE(est.params.sigma_i == 0.0);
        REQUIRE(has_flag(est.flags, "no_impulse_class"));
    }
    SECTION("all impulse") {
        std::vector<std::uint8_t> labels(xs.size(), 1);
        const auto est = plcnoise::estimate_bg_labeled(xs, labels);
        REQUIRE(est.params.p == 1.0);
        REQUIRE(est.params.sigma_b == 0.0);
        REQUIRE(has_flag(est.flags, "no_background_class"));
        // With sigma_b = 0 the whole spread lands in the impulse component.
        REQUIRE(est.params.sigma_i == Catch::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("symmetry diagnostic stays near zero on symmetric inputs", "[estimators][slow]") {
    plcnoise::BgParams bg{0.001, 1.0, std::pow(10.0, 1.5)};
    const auto tb = plcnoise::generate_bg(bg, 1000000, 613u);
    REQUIRE(std::abs(plcnoise::estimate_mcculloch(tb.samples).beta_diag) <= 0.1);

    plcnoise::SasParams sas;
    sas.alpha = 1.4;
    const auto ts = plcnoise::generate_sas(sas, 1000000, 614u);
    REQUIRE(std::abs(plcnoise::estimate_mcculloch(ts.samples).beta_diag) <= 0.1);
}

TEST_CASE("estimator input validation", "[estimators]") {
    std::vector<double> tiny(499, 0.5);
    REQUIRE_THROWS_AS(plcnoise::estimate_mcculloch(tiny), plcnoise::degenerate_sample_error);

    std::vector<double> flat(2000, 1.0);
    REQUIRE_THROWS_AS(plcnoise::estimate_mcculloch(flat), plcnoise::degenerate_sample_error);
    REQUIRE_THROWS_AS(plcnoise::estimate_koutrouvelis(flat), plcnoise::degenerate_sample_error);

    std::vector<double> short_k(999, 0.0);
    REQUIRE_THROWS_AS(plcnoise::estimate_koutrouvelis(short_k), plcnoise::degenerate_sample_error);

    std::vector<double> three{1.0, -2.0, 3.0};
    REQUIRE_THROWS_AS(plcnoise::estimate_extreme_order(three), plcnoise::degenerate_sample_error);
    std::vector<double> six{1.0, -2.0, 3.0, -1.0, 2.0, -3.0};
    REQUIRE_THROWS_AS(plcnoise::estimate_extreme_order(six, 4), plcnoise::segmentation_error);
    REQUIRE_THROWS_AS(plcnoise::estimate_extreme_order(six, 1), plcnoise::segmentation_error);
    // All-positive data starves the negative tail of extremes.
    std::vector<double> pos(100, 0.0);
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = 1.0 + 0.001 * static_cast<double>(i);
    REQUIRE_THROWS_AS(plcnoise::estimate_extreme_order(pos, 10), plcnoise::degenerate_sample_error);

    std::vector<double> xs(100, 0.5);
    std::vector<std::uint8_t> labels(99, 0);
    REQUIRE_THROWS_AS(plcnoise::estimate_bg_labeled(xs, labels), plcnoise::param_error);
    REQUIRE_THROWS_AS(plcnoise::estimate_bg_labeled({}, {}), plcnoise::empty_request_error);

    REQUIRE_THROWS_AS(plcnoise::label_by_threshold({}, 5.0), plcnoise::empty_request_error);
    REQUIRE_THROWS_AS(plcnoise::label_by_threshold(xs, 0.0), plcnoise::param_error);
    std::vector<double> zeros(100, 0.0);
    REQUIRE_THROWS_AS(plcnoise::label_by_threshold(zeros, 5.0),
                      plcnoise::degenerate_sample_error);
}

TEST_CASE("threshold labeling marks the obvious outlier", "[estimators]") {
    plcnoise::Rng rng(88);
    std::vector<double> xs(1000);
    for (auto& x : xs) x = rng.normal();
    xs[137] = 40.0;
    xs[612] = -35.0;
    const auto labels = plcnoise::label_by_threshold(xs, 5.0);
    REQUIRE(labels[137] == 1);
    REQUIRE(labels[612] == 1);
    const auto marked = std::count(labels.begin(), labels.end(), std::uint8_t{1});
    REQUIRE(marked <= 4); // the N(0,1) bulk stays below 5 sigma
}
