#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "plcnoise/bg_model.hpp"
#include "plcnoise/conversion.hpp"
#include "plcnoise/errors.hpp"
#include "plcnoise/estimators.hpp"
#include "plcnoise/format.hpp"
#include "plcnoise/metrics.hpp"
#include "plcnoise/sas_model.hpp"

namespace plcnoise {

// Trace files hold one JSON header line (LF terminated) followed by the raw
// sample payload as little-endian IEEE-754 doubles.  The header records the
// generating model and seed so an artifact is reproducible from itself.
struct TraceHeader {
    std::string model;  // "bg" or "sas"
    BgParams bg;        // meaningful when model == "bg"
    SasParams sas;      // meaningful when model == "sas"
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    double sample_rate_hz = 0.0;  // 0 means "not recorded"
};

struct StoredTrace {
    TraceHeader header;
    std::vector<double> samples;
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline void require_key(const ojson& j, const char* key) {
    if (!j.contains(key))
        throw format_error(std::string("trace header: missing key '") + key + "'");
}

inline double number_at(const ojson& j, const char* key) {
    require_key(j, key);
    if (!j.at(key).is_number())
        throw format_error(std::string("trace header: '") + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::uint64_t count_at(const ojson& j, const char* key) {
    require_key(j, key);
    if (!j.at(key).is_number_unsigned())
        throw format_error(std::string("trace header: '") + key +
                           "' must be a non-negative integer");
    return j.at(key).get<std::uint64_t>();
}

// Payload bytes are little endian on disk regardless of host order.
inline void to_disk_order(std::vector<double>& v) {
    if constexpr (std::endian::native == std::endian::little) {
        (void)v;
    } else {
        for (double& d : v) {
            auto u = std::bit_cast<std::uint64_t>(d);
            u = ((u & 0x00000000000000FFull) << 56) | ((u & 0x000000000000FF00ull) << 40) |
                ((u & 0x0000000000FF0000ull) << 24) | ((u & 0x00000000FF000000ull) << 8) |
                ((u & 0x000000FF00000000ull) >> 8) | ((u & 0x0000FF0000000000ull) >> 24) |
                ((u & 0x00FF000000000000ull) >> 40) | ((u & 0xFF00000000000000ull) >> 56);
            d = std::bit_cast<double>(u);
        }
    }
}

} // namespace detail

inline std::string trace_header_json(const TraceHeader& h) {
    detail::ojson j;
    j["model"] = h.model;
    detail::ojson params;
    if (h.model == "bg") {
        validate(h.bg);
        params["p"] = h.bg.p;
        params["sigma_b"] = h.bg.sigma_b;
        params["sigma_i"] = h.bg.sigma_i;
    } else if (h.model == "sas") {
        validate(h.sas);
        params["alpha"] = h.sas.alpha;
        params["beta"] = h.sas.beta;
        params["gamma"] = h.sas.gamma;
        params["delta"] = h.sas.delta;
    } else {
        throw param_error("trace header: model must be 'bg' or 'sas', got '" + h.model + "'");
    }
    j["params"] = std::move(params);
    j["seed"] = h.seed;
    j["n"] = h.n;
    if (h.sample_rate_hz != 0.0) {
        if (!(h.sample_rate_hz > 0.0) || !std::isfinite(h.sample_rate_hz))
            throw param_error("trace header: sample_rate_hz must be finite and > 0");
        j["sample_rate_hz"] = h.sample_rate_hz;
    }
    return j.dump();
}

inline void write_trace(const std::filesystem::path& path, std::span<const double> samples,
                        TraceHeader header) {
    header.n = samples.size();
    const std::string head = trace_header_json(header);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw param_error("cannot open for writing: " + path.string());
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    out.put('\n');
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(samples.data()),
                  static_cast<std::streamsize>(samples.size() * sizeof(double)));
    } else {
        std::vector<double> buf(samples.begin(), samples.end());
        detail::to_disk_order(buf);
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(double)));
    }
    out.flush();
    if (!out) throw error("short write: " + path.string());
}

inline void write_trace(const std::filesystem::path& path, const NoiseTrace& trace,
                        const BgParams& params, double sample_rate_hz = 0.0) {
    TraceHeader h;
    h.model = "bg";
    h.bg = params;
    h.seed = trace.seed;
    h.sample_rate_hz = sample_rate_hz;
    write_trace(path, trace.samples, h);
}

inline void write_trace(const std::filesystem::path& path, const NoiseTrace& trace,
                        const SasParams& params, double sample_rate_hz = 0.0) {
    TraceHeader h;
    h.model = "sas";
    h.sas = params;
    h.seed = trace.seed;
    h.sample_rate_hz = sample_rate_hz;
    write_trace(path, trace.samples, h);
}

inline StoredTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open trace: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw format_error("trace has no header line: " + path.string());
    if (line.size() > (1u << 20)) throw format_error("trace header exceeds 1 MiB: " + path.string());

    const auto j = detail::ojson::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object())
        throw format_error("trace header is not a JSON object: " + path.string());

    StoredTrace st;
    detail::require_key(j, "model");
    if (!j.at("model").is_string())
        throw format_error("trace header: 'model' must be a string");
    st.header.model = j.at("model").get<std::string>();
    detail::require_key(j, "params");
    const auto& params = j.at("params");
    if (!params.is_object()) throw format_error("trace header: 'params' must be an object");

    try {
        if (st.header.model == "bg") {
            st.header.bg.p = detail::number_at(params, "p");
            st.header.bg.sigma_b = detail::number_at(params, "sigma_b");
            st.header.bg.sigma_i = detail::number_at(params, "sigma_i");
            validate(st.header.bg);
        } else if (st.header.model == "sas") {
            st.header.sas.alpha = detail::number_at(params, "alpha");
            st.header.sas.gamma = detail::number_at(params, "gamma");
            st.header.sas.beta = params.contains("beta") ? detail::number_at(params, "beta") : 0.0;
            st.header.sas.delta =
                params.contains("delta") ? detail::number_at(params, "delta") : 0.0;
            validate(st.header.sas);
        } else {
            throw format_error("trace header: unknown model '" + st.header.model + "'");
        }
    } catch (const param_error& e) {
        throw format_error(std::string("trace header: ") + e.what());
    }

    st.header.seed = detail::count_at(j, "seed");
    st.header.n = detail::count_at(j, "n");
    if (j.contains("sample_rate_hz")) {
        st.header.sample_rate_hz = detail::number_at(j, "sample_rate_hz");
        if (!(st.header.sample_rate_hz > 0.0) || !std::isfinite(st.header.sample_rate_hz))
            throw format_error("trace header: sample_rate_hz must be finite and > 0");
    }

    st.samples.resize(st.header.n);
    in.read(reinterpret_cast<char*>(st.samples.data()),
            static_cast<std::streamsize>(st.header.n * sizeof(double)));
    if (static_cast<std::uint64_t>(in.gcount()) != st.header.n * sizeof(double))
        throw format_error("trace payload truncated: expected " +
                           detail::format_u64(st.header.n) + " samples in " + path.string());
    if (in.peek() != std::char_traits<char>::eof())
        throw format_error("trailing bytes after trace payload: " + path.string());
    detail::to_disk_order(st.samples);
    return st;
}

// Rebuild the in-memory trace form, including the human-readable source tag.
inline NoiseTrace to_noise_trace(const StoredTrace& st) {
    NoiseTrace tr;
    tr.samples = st.samples;
    tr.seed = st.header.seed;
    tr.source = st.header.model == "bg" ? detail::bg_source_tag(st.header.bg)
                                        : detail::sas_source_tag(st.header.sas);
    return tr;
}

// Single-column CSV of raw sample values, LF line endings.
inline std::string trace_csv(std::span<const double> samples) {
    std::string out = "value\n";
    for (double v : samples) {
        out += detail::format_double(v);
        out += '\n';
    }
    return out;
}

// Two-column CSV of a density evaluated on a grid.
inline std::string pdf_csv(std::span<const double> xs, std::span<const double> density) {
    if (xs.size() != density.size())
        throw param_error("pdf_csv: grid and density sizes differ");
    std::string out = "x,density\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += detail::format_double(xs[i]);
        out += ',';
        out += detail::format_double(density[i]);
        out += '\n';
    }
    return out;
}

inline std::string empirical_pdf_csv(const EmpiricalPdf& pdf) {
    std::string out = "bin_center,density\n";
    for (std::size_t i = 0; i < pdf.bins(); ++i) {
        out += detail::format_double(pdf.center(i));
        out += ',';
        out += detail::format_double(pdf.density[i]);
        out += '\n';
    }
    return out;
}

inline std::string estimate_json(const SasEstimate& est) {
    detail::ojson j;
    j["method"] = to_string(est.method);
    j["alpha"] = est.params.alpha;
    j["gamma"] = est.params.gamma;
    j["beta_diag"] = est.beta_diag;
    j["n_used"] = est.n_used;
    j["flags"] = est.flags;
    return j.dump();
}

inline std::string estimate_json(const BgEstimate& est, std::size_t n_used) {
    detail::ojson j;
    j["method"] = "bg-labeled";
    j["p"] = est.params.p;
    j["sigma_b"] = est.params.sigma_b;
    j["sigma_i"] = est.params.sigma_i;
    j["n_impulse"] = est.n_impulse;
    j["n_used"] = n_used;
    j["flags"] = est.flags;
    return j.dump();
}

inline std::string cell_json(const ConversionCell& cell) {
    detail::ojson j;
    j["p"] = cell.p;
    j["ratio_db"] = cell.ratio_db;
    j["alpha_hat"] = cell.alpha_hat;
    j["gamma_hat"] = cell.gamma_hat;
    j["kl"] = cell.kl;
    j["n"] = cell.n;
    j["seed"] = cell.seed;
    return j.dump();
}

inline std::string surface_json(const PolySurface& s) {
    detail::ojson j;
    j["target"] = to_string(s.target);
    j["c00"] = s.c00;
    j["c10"] = s.c10;
    j["c01"] = s.c01;
    j["c20"] = s.c20;
    j["c11"] = s.c11;
    j["c02"] = s.c02;
    j["fit_rmse"] = s.fit_rmse;
    detail::ojson dom;
    dom["p_min"] = kSurfaceDomainPMin;
    dom["p_max"] = kSurfaceDomainPMax;
    dom["ratio_db_min"] = kSurfaceDomainDbMin;
    dom["ratio_db_max"] = kSurfaceDomainDbMax;
    j["domain"] = std::move(dom);
    return j.dump();
}

// Reads back the CSV written by conversion_sweep_csv, e.g. to refit surfaces
// from a stored sweep artifact.
inline std::vector<ConversionCell> parse_conversion_csv(const std::string& text) {
    std::vector<ConversionCell> cells;
    std::size_t pos = 0;
    auto next_line = [&](std::string& line) {
        if (pos >= text.size()) return false;
        const auto nl = text.find('\n', pos);
        line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };
    std::string line;
    if (!next_line(line) || line != "p,ratio_db,alpha_hat,gamma_hat,kl,n,seed")
        throw format_error("conversion csv: unexpected header '" + line + "'");
    while (next_line(line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 7)
            throw format_error("conversion csv: expected 7 fields, got " +
                               detail::format_u64(fields.size()));
        ConversionCell c;
        c.p = detail::parse_double(fields[0]);
        c.ratio_db = detail::parse_double(fields[1]);
        c.alpha_hat = detail::parse_double(fields[2]);
        c.gamma_hat = detail::parse_double(fields[3]);
        c.kl = detail::parse_double(fields[4]);
        c.n = static_cast<std::size_t>(detail::parse_u64(fields[5]));
        c.seed = detail::parse_u64(fields[6]);
        cells.push_back(c);
    }
    return cells;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw param_error("cannot open for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw error("short write: " + path.string());
}

} // namespace plcnoise
