// plcnoise: reproducible impulsive-noise experiments from the command line.
//
// Every command that consumes randomness takes a mandatory --seed; all
// derived streams are split deterministically from it, so re-running a
// command with the same arguments reproduces its output artifacts byte for
// byte.  Validation problems exit with status 2, runtime numerical failures
// with status 1.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "plcnoise/bg_model.hpp"
#include "plcnoise/conversion.hpp"
#include "plcnoise/errors.hpp"
#include "plcnoise/estimators.hpp"
#include "plcnoise/metrics.hpp"
#include "plcnoise/rng.hpp"
#include "plcnoise/sas_model.hpp"
#include "plcnoise/stability.hpp"
#include "plcnoise/trace_io.hpp"

namespace {

const char* kUnitsFooter =
    "Units: --ratio-db and ratio grids for 'convert'/'sweep' are power ratios in\n"
    "decibels, ratio_db = 20*log10(sigma_i/sigma_b) = 10*log10(sigma_i^2/sigma_b^2);\n"
    "sigma values, --half-width, and 'stability' ratio grids are linear amplitudes.\n"
    "Grid syntax: lo:hi:count[log|10log]. Plain count = uniform spacing, 'log' =\n"
    "geometric spacing, '10log' = uniform in 10*log10(value) (same points as 'log',\n"
    "kept for dB-stepped power grids). With both suffixes possible the longer one\n"
    "wins, so '310log' is 3 points '10log' and '10log' is 10 points 'log'.";

// Parses lo:hi:count[log|10log]; endpoints are hit exactly.
std::vector<double> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw plcnoise::param_error("grid: expected lo:hi:count[log|10log], got '" + spec + "'");
    const double lo = plcnoise::detail::parse_double(spec.substr(0, c1));
    const double hi = plcnoise::detail::parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
    std::string tail = spec.substr(c2 + 1);

    enum class Spacing { linear, geometric, db10 } spacing = Spacing::linear;
    if (tail.size() > 5 && tail.substr(tail.size() - 5) == "10log") {
        spacing = Spacing::db10;
        tail.resize(tail.size() - 5);
    } else if (tail.size() > 3 && tail.substr(tail.size() - 3) == "log") {
        spacing = Spacing::geometric;
        tail.resize(tail.size() - 3);
    }
    const std::uint64_t count = plcnoise::detail::parse_u64(tail);
    if (count == 0) throw plcnoise::param_error("grid: count must be >= 1");
    if (count > 1000000) throw plcnoise::param_error("grid: count too large");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw plcnoise::param_error("grid: bounds must be finite");
    if (spacing != Spacing::linear && !(lo > 0.0 && hi > 0.0))
        throw plcnoise::param_error("grid: log spacing needs positive bounds");

    std::vector<double> values(count);
    if (count == 1) {
        values[0] = lo;
        return values;
    }
    for (std::uint64_t k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(count - 1);
        switch (spacing) {
            case Spacing::linear: values[k] = lo + (hi - lo) * t; break;
            case Spacing::geometric: values[k] = lo * std::pow(hi / lo, t); break;
            case Spacing::db10: {
                const double db = 10.0 * std::log10(lo) * (1.0 - t) + 10.0 * std::log10(hi) * t;
                values[k] = std::pow(10.0, db / 10.0);
                break;
            }
        }
    }
    values.front() = lo;
    values.back() = hi;
    return values;
}

void require_option(const CLI::Option* opt, const std::string& msg) {
    if (opt->count() == 0) throw plcnoise::param_error(msg);
}

struct GenerateArgs {
    std::string model;
    double p = 0.0, sigma_b = 1.0, sigma_i = 0.0;
    double alpha = 2.0, beta = 0.0, gamma = 1.0, delta = 0.0;
    std::uint64_t n = 0, seed = 0;
    std::string output, format = "bin";
    double sample_rate_hz = 0.0;
    CLI::Option *p_opt = nullptr, *sigma_i_opt = nullptr, *alpha_opt = nullptr;
};

int run_generate(const GenerateArgs& a) {
    if (a.model == "bg") {
        require_option(a.p_opt, "generate: --p is required for --model bg");
        require_option(a.sigma_i_opt, "generate: --sigma-i is required for --model bg");
    } else {
        require_option(a.alpha_opt, "generate: --alpha is required for --model sas");
    }
    if (a.format == "csv" && a.sample_rate_hz != 0.0)
        throw plcnoise::param_error("generate: --sample-rate-hz needs --format bin");

    plcnoise::NoiseTrace trace;
    if (a.model == "bg") {
        const plcnoise::BgParams pr{a.p, a.sigma_b, a.sigma_i};
        trace = plcnoise::generate_bg(pr, a.n, a.seed);
        if (a.format == "bin")
            plcnoise::write_trace(a.output, trace, pr, a.sample_rate_hz);
    } else {
        plcnoise::SasParams pr;
        pr.alpha = a.alpha;
        pr.beta = a.beta;
        pr.gamma = a.gamma;
        pr.delta = a.delta;
        trace = plcnoise::generate_sas(pr, a.n, a.seed);
        if (a.format == "bin")
            plcnoise::write_trace(a.output, trace, pr, a.sample_rate_hz);
    }
    if (a.format == "csv")
        plcnoise::write_text_file(a.output, plcnoise::trace_csv(trace.samples));
    std::cout << "generate: wrote " << trace.samples.size() << " samples from " << trace.source
              << " with seed " << trace.seed << " to " << a.output << "\n";
    return 0;
}

struct EstimateArgs {
    std::string input, output, method = "mcculloch";
    std::uint64_t segments = 0;
    double threshold_mult = 5.0;
};

int run_estimate(const EstimateArgs& a) {
    const auto stored = plcnoise::read_trace(a.input);
    const auto& xs = stored.samples;
    std::string record;
    std::string summary;
    if (a.method == "bg-labeled") {
        const auto labels = plcnoise::label_by_threshold(xs, a.threshold_mult);
        const auto est = plcnoise::estimate_bg_labeled(xs, labels);
        record = plcnoise::estimate_json(est, xs.size());
        summary = "p=" + plcnoise::detail::format_double(est.params.p) +
                  " sigma_b=" + plcnoise::detail::format_double(est.params.sigma_b) +
                  " sigma_i=" + plcnoise::detail::format_double(est.params.sigma_i);
    } else {
        plcnoise::SasEstimate est;
        if (a.method == "mcculloch") est = plcnoise::estimate_mcculloch(xs);
        else if (a.method == "koutrouvelis") est = plcnoise::estimate_koutrouvelis(xs);
        else est = plcnoise::estimate_extreme_order(xs, a.segments);
        record = plcnoise::estimate_json(est);
        summary = "alpha=" + plcnoise::detail::format_double(est.params.alpha) +
                  " gamma=" + plcnoise::detail::format_double(est.params.gamma);
    }
    plcnoise::write_text_file(a.output, record + "\n");
    std::cout << "estimate: " << a.method << " " << summary << " from " << xs.size()
              << " samples to " << a.output << "\n";
    return 0;
}

struct ConvertArgs {
    double p = 0.0, ratio_db = 0.0;
    std::uint64_t n = 0, seed = 0;
    std::string output;
    bool analytic_power = false, fast = false;
    CLI::Option *n_opt = nullptr, *seed_opt = nullptr;
};

int run_convert(const ConvertArgs& a) {
    if (a.fast) {
        const auto [alpha_s, gamma_s] = plcnoise::builtin_surfaces();
        bool extrapolated = false;
        const double alpha_hat = plcnoise::poly_eval(alpha_s, a.p, a.ratio_db, &extrapolated);
        const double gamma_hat = plcnoise::poly_eval(gamma_s, a.p, a.ratio_db);
        nlohmann::ordered_json j;
        j["p"] = a.p;
        j["ratio_db"] = a.ratio_db;
        j["alpha_hat"] = alpha_hat;
        j["gamma_hat"] = gamma_hat;
        j["extrapolated"] = extrapolated;
        j["source"] = "builtin-surface";
        plcnoise::write_text_file(a.output, j.dump() + "\n");
        std::cout << "convert: surface lookup alpha_hat="
                  << plcnoise::detail::format_double(alpha_hat)
                  << " gamma_hat=" << plcnoise::detail::format_double(gamma_hat) << " to "
                  << a.output << "\n";
        return 0;
    }
    require_option(a.n_opt, "convert: --n is required (or use --fast)");
    require_option(a.seed_opt, "convert: --seed is required (or use --fast)");
    const auto cell = plcnoise::convert_cell(a.p, a.ratio_db, a.n, a.seed, a.analytic_power);
    plcnoise::write_text_file(a.output, plcnoise::cell_json(cell) + "\n");
    std::cout << "convert: p=" << plcnoise::detail::format_double(cell.p)
              << " ratio_db=" << plcnoise::detail::format_double(cell.ratio_db)
              << " alpha_hat=" << plcnoise::detail::format_double(cell.alpha_hat)
              << " gamma_hat=" << plcnoise::detail::format_double(cell.gamma_hat)
              << " kl=" << plcnoise::detail::format_double(cell.kl) << " to " << a.output << "\n";
    return 0;
}

struct SweepArgs {
    std::string p_grid, ratio_grid, output;
    std::uint64_t n = 0, seed = 0;
    bool analytic_power = false;
};

int run_sweep(const SweepArgs& a) {
    const auto ps = parse_grid(a.p_grid);
    const auto dbs = parse_grid(a.ratio_grid);
    const auto cells = plcnoise::conversion_sweep(ps, dbs, a.n, a.seed, a.analytic_power);
    plcnoise::write_text_file(a.output, plcnoise::conversion_sweep_csv(cells));
    std::cout << "sweep: wrote " << cells.size() << " cells (" << ps.size() << " p x "
              << dbs.size() << " ratio_db) to " << a.output << "\n";
    return 0;
}

struct StabilityArgs {
    double p = 0.0, sigma_b = 1.0, sigma_i = 0.0;
    std::string p_grid, ratio_grid, output;
    std::uint64_t n = 1000000, seed = 0;
    std::uint64_t bins = 401;
    bool analytic_variance = false;
    CLI::Option *p_opt = nullptr, *sigma_i_opt = nullptr;
    CLI::Option *p_grid_opt = nullptr, *ratio_grid_opt = nullptr;
};

int run_stability(const StabilityArgs& a) {
    const bool sweep = a.p_grid_opt->count() > 0 || a.ratio_grid_opt->count() > 0;
    plcnoise::StabilityTestConfig cfg;
    cfg.params.sigma_b = a.sigma_b;
    cfg.n = a.n;
    cfg.seed = a.seed;
    cfg.bins = a.bins;
    cfg.analytic_variance = a.analytic_variance;

    if (sweep) {
        require_option(a.p_grid_opt, "stability: --p-grid is required for a sweep");
        require_option(a.ratio_grid_opt, "stability: --ratio-grid is required for a sweep");
        if (a.p_opt->count() || a.sigma_i_opt->count())
            throw plcnoise::param_error("stability: use either --p/--sigma-i or the grids");
        const auto cells =
            plcnoise::stability_sweep(parse_grid(a.p_grid), parse_grid(a.ratio_grid), cfg);
        plcnoise::write_text_file(a.output, plcnoise::stability_sweep_csv(cells));
        std::cout << "stability: wrote " << cells.size() << " cells to " << a.output << "\n";
        return 0;
    }

    require_option(a.p_opt, "stability: --p is required (or use the grid options)");
    require_option(a.sigma_i_opt, "stability: --sigma-i is required (or use the grid options)");
    cfg.params.p = a.p;
    cfg.params.sigma_i = a.sigma_i;
    const auto report = plcnoise::stability_test(cfg);
    nlohmann::ordered_json j;
    j["p"] = cfg.params.p;
    j["sigma_b"] = cfg.params.sigma_b;
    j["sigma_i"] = cfg.params.sigma_i;
    if (cfg.params.sigma_i > 0.0)
        j["ratio_db"] = 20.0 * std::log10(cfg.params.sigma_i / cfg.params.sigma_b);
    j["kl"] = report.kl;
    j["rmse"] = report.rmse;
    j["n"] = cfg.n;
    j["seed"] = cfg.seed;
    j["bins"] = cfg.bins;
    plcnoise::write_text_file(a.output, j.dump() + "\n");
    std::cout << "stability: kl=" << plcnoise::detail::format_double(report.kl)
              << " rmse=" << plcnoise::detail::format_double(report.rmse) << " to " << a.output
              << "\n";
    return 0;
}

struct FitSurfaceArgs {
    std::string input, target, output;
    bool builtin = false;
    CLI::Option* input_opt = nullptr;
};

int run_fit_surface(const FitSurfaceArgs& a) {
    plcnoise::PolySurface surface;
    if (a.builtin) {
        const auto [alpha_s, gamma_s] = plcnoise::builtin_surfaces();
        surface = a.target == "alpha" ? alpha_s : gamma_s;
    } else {
        require_option(a.input_opt, "fit-surface: --input is required (or use --builtin)");
        const auto cells = plcnoise::parse_conversion_csv(plcnoise::read_text_file(a.input));
        surface = plcnoise::fit_poly_surface(cells, a.target == "alpha"
                                                        ? plcnoise::SurfaceTarget::alpha_hat
                                                        : plcnoise::SurfaceTarget::gamma_hat);
    }
    plcnoise::write_text_file(a.output, plcnoise::surface_json(surface) + "\n");
    std::cout << "fit-surface: target=" << a.target
              << " fit_rmse=" << plcnoise::detail::format_double(surface.fit_rmse)
              << (a.builtin ? " (builtin)" : "") << " to " << a.output << "\n";
    return 0;
}

struct MetricsArgs {
    std::string input, output, pdf_csv_path;
    std::uint64_t bins = 401;
    double half_width = 0.0;
};

int run_metrics(const MetricsArgs& a) {
    const auto stored = plcnoise::read_trace(a.input);
    const auto& xs = stored.samples;

    double hw = a.half_width;
    if (hw == 0.0) {
        if (stored.header.model == "bg") {
            hw = 8.0 * std::sqrt(plcnoise::bg_variance(stored.header.bg));
        } else {
            // Heavy tails make the sample variance useless; scale from the
            // interquartile range instead (1.349 is the normal-IQR factor).
            std::vector<double> scratch(xs.begin(), xs.end());
            const std::vector<double> probs{0.25, 0.75};
            const auto q = plcnoise::detail::sample_quantiles(scratch, probs);
            hw = 8.0 * (q[1] - q[0]) / 1.3489795003921636;
        }
    }
    if (!(hw > 0.0) || !std::isfinite(hw))
        throw plcnoise::param_error("metrics: --half-width must be finite and > 0");

    const auto emp = plcnoise::empirical_pdf(xs, a.bins, -hw, hw);
    const auto model_at = [&](double x) {
        return stored.header.model == "bg" ? plcnoise::bg_pdf(x, stored.header.bg)
                                           : plcnoise::sas_pdf_point(stored.header.sas, x);
    };
    const auto model = plcnoise::model_pdf_at_centers(model_at, emp.bins(), -hw, hw);
    const double rmse = plcnoise::weighted_rmse(emp, model);
    const double kl = plcnoise::kl_divergence(emp, model);

    nlohmann::ordered_json j;
    j["model"] = stored.header.model;
    if (stored.header.model == "bg") {
        j["params"]["p"] = stored.header.bg.p;
        j["params"]["sigma_b"] = stored.header.bg.sigma_b;
        j["params"]["sigma_i"] = stored.header.bg.sigma_i;
    } else {
        j["params"]["alpha"] = stored.header.sas.alpha;
        j["params"]["beta"] = stored.header.sas.beta;
        j["params"]["gamma"] = stored.header.sas.gamma;
        j["params"]["delta"] = stored.header.sas.delta;
    }
    j["n"] = xs.size();
    j["bins"] = a.bins;
    j["half_width"] = hw;
    j["clipped_fraction"] = emp.clipped_fraction;
    j["weighted_rmse"] = rmse;
    j["kl"] = kl;
    plcnoise::write_text_file(a.output, j.dump() + "\n");
    if (!a.pdf_csv_path.empty())
        plcnoise::write_text_file(a.pdf_csv_path, plcnoise::empirical_pdf_csv(emp));
    std::cout << "metrics: weighted_rmse=" << plcnoise::detail::format_double(rmse)
              << " kl=" << plcnoise::detail::format_double(kl) << " to " << a.output << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impulsive noise toolkit: Bernoulli-Gaussian and symmetric alpha-stable "
                 "generation, density evaluation, parameter estimation, quasi-stability "
                 "analysis, and model conversion."};
    app.require_subcommand(1);
    app.footer(kUnitsFooter);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate a noise trace and write it to a file");
    g->footer(kUnitsFooter);
    g->add_option("--model", gen.model, "Noise model: bg or sas")
        ->required()
        ->check(CLI::IsMember({"bg", "sas"}));
    gen.p_opt = g->add_option("--p", gen.p, "bg impulse probability in [0, 1]");
    g->add_option("--sigma-b", gen.sigma_b,
                  "bg background standard deviation, linear amplitude (default 1)");
    gen.sigma_i_opt = g->add_option(
        "--sigma-i", gen.sigma_i, "bg impulse standard deviation, linear amplitude");
    gen.alpha_opt = g->add_option("--alpha", gen.alpha, "sas characteristic exponent in (0, 2]");
    g->add_option("--beta", gen.beta, "sas skewness; only 0 is supported (default 0)");
    g->add_option("--gamma", gen.gamma, "sas scale, linear amplitude (default 1)");
    g->add_option("--delta", gen.delta, "sas location (default 0)");
    g->add_option("--n", gen.n, "number of samples")->required();
    g->add_option("--seed", gen.seed, "RNG seed; same seed reproduces the trace exactly")
        ->required();
    g->add_option("-o,--output", gen.output, "output file path")->required();
    g->add_option("--format", gen.format,
                  "bin = JSON header line + little-endian float64 payload; csv = single column")
        ->check(CLI::IsMember({"bin", "csv"}));
    g->add_option("--sample-rate-hz", gen.sample_rate_hz,
                  "optional sample rate recorded in the binary header");

    EstimateArgs est;
    auto* e = app.add_subcommand("estimate",
                                 "Estimate model parameters from a binary trace file");
    e->footer(kUnitsFooter);
    e->add_option("-i,--input", est.input, "input trace (binary format from 'generate')")
        ->required();
    e->add_option("--method", est.method,
                  "mcculloch, koutrouvelis, extreme-order, or bg-labeled (default mcculloch)")
        ->check(CLI::IsMember({"mcculloch", "koutrouvelis", "extreme-order", "bg-labeled"}));
    e->add_option("--segments", est.segments,
                  "extreme-order: segment count; 0 = floor(sqrt(n)) (default 0)");
    e->add_option("--threshold-mult", est.threshold_mult,
                  "bg-labeled: impulse threshold as a multiple of the MAD scale (default 5)");
    e->add_option("-o,--output", est.output, "output JSON record path")->required();

    ConvertArgs conv;
    auto* c = app.add_subcommand(
        "convert", "Fit a stable model to one simulated bg cell (or use --fast surfaces)");
    c->footer(kUnitsFooter);
    c->add_option("--p", conv.p, "bg impulse probability in [0, 1]")->required();
    c->add_option("--ratio-db", conv.ratio_db,
                  "impulse-to-background power ratio in dB: 20*log10(sigma_i/sigma_b)")
        ->required();
    conv.n_opt = c->add_option("--n", conv.n, "samples per cell (>= 100000)");
    conv.seed_opt = c->add_option("--seed", conv.seed, "RNG seed for the cell");
    c->add_option("-o,--output", conv.output, "output JSON path")->required();
    c->add_flag("--analytic-power", conv.analytic_power,
                "normalize by the model power instead of the sample power");
    c->add_flag("--fast", conv.fast,
                "evaluate the built-in polynomial response surfaces; no simulation");

    SweepArgs sw;
    auto* s = app.add_subcommand("sweep",
                                 "Run a conversion sweep over a (p, ratio_db) grid to CSV");
    s->footer(kUnitsFooter);
    s->add_option("--p-grid", sw.p_grid, "impulse probability grid, lo:hi:count[log|10log]")
        ->required();
    s->add_option("--ratio-grid", sw.ratio_grid,
                  "power ratio grid in dB (20*log10(sigma_i/sigma_b)), lo:hi:count[log|10log]")
        ->required();
    s->add_option("--n", sw.n, "samples per cell (>= 100000)")->required();
    s->add_option("--seed", sw.seed,
                  "base seed; cell seed = seed XOR row-major cell index")
        ->required();
    s->add_option("-o,--output", sw.output, "output CSV path")->required();
    s->add_flag("--analytic-power", sw.analytic_power,
                "normalize by the model power instead of the sample power");

    StabilityArgs st;
    auto* t = app.add_subcommand(
        "stability", "Compare a rescaled sum of two bg traces against a fresh bg trace");
    t->footer(kUnitsFooter);
    st.p_opt = t->add_option("--p", st.p, "bg impulse probability in [0, 1]");
    t->add_option("--sigma-b", st.sigma_b,
                  "bg background standard deviation, linear amplitude (default 1)");
    st.sigma_i_opt =
        t->add_option("--sigma-i", st.sigma_i, "bg impulse standard deviation, linear amplitude");
    st.p_grid_opt =
        t->add_option("--p-grid", st.p_grid, "sweep: probability grid, lo:hi:count[log|10log]");
    st.ratio_grid_opt = t->add_option(
        "--ratio-grid", st.ratio_grid,
        "sweep: LINEAR amplitude ratio grid sigma_i/sigma_b (the CSV reports "
        "ratio_db = 20*log10(ratio)), lo:hi:count[log|10log]");
    t->add_option("--n", st.n, "samples per trace (>= 100000, default 1000000)");
    t->add_option("--seed", st.seed, "base seed; sweep cell seed = seed XOR row-major index")
        ->required();
    t->add_option("--bins", st.bins, "histogram bins (default 401)");
    t->add_flag("--analytic-variance", st.analytic_variance,
                "rescale the sum by the exact factor 1/sqrt(2) instead of sample variances");
    t->add_option("-o,--output", st.output, "output path (JSON single cell, CSV sweep)")
        ->required();

    FitSurfaceArgs fit;
    auto* f = app.add_subcommand(
        "fit-surface", "Fit a quadratic response surface to a conversion sweep CSV");
    f->footer(kUnitsFooter);
    fit.input_opt = f->add_option("-i,--input", fit.input, "input sweep CSV (from 'sweep')");
    f->add_option("--target", fit.target, "which response to fit: alpha or gamma")
        ->required()
        ->check(CLI::IsMember({"alpha", "gamma"}));
    f->add_flag("--builtin", fit.builtin, "emit the built-in surface instead of fitting");
    f->add_option("-o,--output", fit.output, "output JSON path")->required();

    MetricsArgs met;
    auto* m = app.add_subcommand(
        "metrics", "Score a trace's empirical density against its own generating model");
    m->footer(kUnitsFooter);
    m->add_option("-i,--input", met.input, "input trace (binary format from 'generate')")
        ->required();
    m->add_option("--bins", met.bins, "histogram bins (default 401)");
    m->add_option("--half-width", met.half_width,
                  "histogram half width, linear amplitude; 0 = auto (default 0)");
    m->add_option("--pdf-csv", met.pdf_csv_path,
                  "also write the empirical density as bin_center,density CSV");
    m->add_option("-o,--output", met.output, "output JSON report path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForAllHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& pe) {
        app.exit(pe);
        return 2;
    }

    try {
        if (g->parsed()) return run_generate(gen);
        if (e->parsed()) return run_estimate(est);
        if (c->parsed()) return run_convert(conv);
        if (s->parsed()) return run_sweep(sw);
        if (t->parsed()) return run_stability(st);
        if (f->parsed()) return run_fit_surface(fit);
        if (m->parsed()) return run_metrics(met);
    } catch (const plcnoise::error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return err.exit_code();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
