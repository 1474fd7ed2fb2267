#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracq/fracq.hpp"

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

ordered_json base_report(const char* command) {
    ordered_json j;
    j["schema"] = fracq::kSchema;
    j["tool_version"] = fracq::kToolVersion;
    j["command"] = command;
    return j;
}

// nlohmann silently serializes non-finite doubles as null; make that explicit
// so every null in a report is a deliberate "absent".
ordered_json num_or_null(double v) {
    if (std::isfinite(v))
        return ordered_json(v);
    return ordered_json(nullptr);
}

void emit_report(const ordered_json& j, const std::string& report_path) {
    const std::string text = j.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!report_path.empty())
        fracq::atomic_write(report_path, text);
}

fracq::Kind parse_kind(const std::string& s) {
    if (s == "white")
        return fracq::Kind::white;
    if (s == "fgn")
        return fracq::Kind::fgn;
    if (s == "fbm")
        return fracq::Kind::fbm;
    throw fracq::DomainError("unknown kind '" + s + "'");
}

fracq::AnchorMode parse_anchor(const std::string& s) {
    if (s == "auto")
        return fracq::AnchorMode::automatic;
    if (s == "on")
        return fracq::AnchorMode::on;
    if (s == "off")
        return fracq::AnchorMode::off;
    throw fracq::DomainError("unknown anchor mode '" + s + "'");
}

std::vector<double> index_column(std::size_t n) {
    std::vector<double> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = static_cast<double>(i);
    return idx;
}

std::uint32_t error_kind_code(fracq::ErrorSource src) {
    return src == fracq::ErrorSource::raw ? fracq::kKindCodeErrorRaw
                                          : fracq::kKindCodeErrorSigmaDelta;
}

void write_signal_file(const std::string& path, const fracq::SignalPath& p,
                       const std::string& format) {
    if (format == "binary") {
        fracq::Container c;
        c.kind_code = fracq::kind_code(p.kind);
        c.hurst = p.hurst;
        c.values = p.values;
        fracq::write_container(path, c);
    } else {
        const auto idx = index_column(p.values.size());
        fracq::write_csv(path, {"index", "value"}, {&idx, &p.values});
    }
}

void write_error_file(const std::string& path, const fracq::ErrorSeries& e,
                      double hurst, const std::string& format) {
    if (format == "binary") {
        fracq::Container c;
        c.kind_code = error_kind_code(e.source);
        c.hurst = hurst;
        c.values = e.values;
        fracq::write_container(path, c);
    } else {
        const auto idx = index_column(e.values.size());
        fracq::write_csv(path, {"index", "error"}, {&idx, &e.values});
    }
}

fracq::ErrorSeries read_error(const std::string& path) {
    if (fracq::is_container_file(path)) {
        const fracq::Container c = fracq::read_container(path);
        if (!c.is_signal())
            return c.to_error();
        fracq::ErrorSeries e;  // signal container used as a plain sequence
        e.values = c.values;
        return e;
    }
    fracq::ErrorSeries e;
    e.values = fracq::read_csv(path).columns.back();
    return e;
}

// ---------------------------------------------------------------- weights --

struct WeightsOpts {
    double d = 0;
    std::size_t n = 100;
    std::string out;
    std::string report;
};

int run_weights(const WeightsOpts& o) {
    const auto w = fracq::weights(o.d, o.n);
    if (!o.out.empty()) {
        const auto idx = index_column(w.values.size());
        fracq::write_csv(o.out, {"index", "weight"}, {&idx, &w.values});
    }
    ordered_json j = base_report("weights");
    j["config"] = {{"d", o.d}, {"n", o.n}, {"out", o.out}};
    j["count"] = w.values.size();
    j["first"] = w.values.front();
    j["last"] = w.values.back();
    emit_report(j, o.report);
    return 0;
}

// ------------------------------------------------------------------ synth --

struct SynthOpts {
    std::string kind = "white";
    double hurst = std::numeric_limits<double>::quiet_NaN();
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    bool fft = false;
    std::string report;
};

int run_synth(const SynthOpts& o) {
    const fracq::Kind kind = parse_kind(o.kind);
    const bool has_hurst = !std::isnan(o.hurst);
    if (kind == fracq::Kind::white && has_hurst)
        throw fracq::DomainError("white noise takes no --hurst");
    if (kind != fracq::Kind::white && !has_hurst)
        throw fracq::DomainError("--hurst is required for kind " + o.kind);
    const auto route = o.fft ? fracq::ConvRoute::fft : fracq::ConvRoute::naive;
    fracq::SignalPath p;
    if (kind == fracq::Kind::white)
        p = fracq::gaussian_white(o.n, o.seed);
    else if (kind == fracq::Kind::fgn)
        p = fracq::fgn(o.hurst, o.n, o.seed, route);
    else
        p = fracq::fbm(o.hurst, o.n, o.seed, route);
    write_signal_file(o.out, p, o.format);
    ordered_json j = base_report("synth");
    j["config"] = {{"kind", o.kind},      {"hurst", num_or_null(o.hurst)},
                   {"n", o.n},            {"seed", o.seed},
                   {"out", o.out},        {"format", o.format},
                   {"route", o.fft ? "fft" : "naive"}};
    j["written"] = p.values.size();
    emit_report(j, o.report);
    return 0;
}

// --------------------------------------------------------------- quantize --

struct QuantizeOpts {
    std::string in;
    long long levels = 0;
    double half_range = 0;
    bool has_levels = false, has_half_range = false;
    double auto_hires = 0;
    bool has_auto_hires = false;
    std::string out;
    std::string error_out;
    std::string sd_error_out;
    std::string format = "csv";
    std::string report;
};

int run_quantize(const QuantizeOpts& o) {
    const fracq::SignalPath signal = fracq::read_signal(o.in);
    fracq::QuantizerSpec spec;
    if (o.has_auto_hires) {
        if (o.has_levels || o.has_half_range)
            throw fracq::DomainError(
                "--auto-hires excludes --levels/--half-range");
        spec = fracq::high_resolution_spec(signal, o.auto_hires);
    } else {
        if (!o.has_levels || !o.has_half_range)
            throw fracq::DomainError(
                "need both --levels and --half-range, or --auto-hires");
        spec = fracq::QuantizerSpec::from_levels(o.half_range, o.levels);
    }
    const auto r = fracq::quantize(signal, spec);
    if (!o.out.empty())
        write_signal_file(o.out, r.quantized, o.format);
    if (!o.error_out.empty())
        write_error_file(o.error_out, r.error, signal.hurst, o.format);
    if (!o.sd_error_out.empty()) {
        const auto sd = fracq::sigma_delta_error(signal, spec.delta);
        write_error_file(o.sd_error_out, sd, signal.hurst, o.format);
    }
    ordered_json j = base_report("quantize");
    j["config"] = {{"in", o.in},
                   {"levels", o.has_levels ? ordered_json(o.levels) : ordered_json(nullptr)},
                   {"half_range", o.has_half_range ? ordered_json(o.half_range) : ordered_json(nullptr)},
                   {"auto_hires", o.has_auto_hires ? ordered_json(o.auto_hires) : ordered_json(nullptr)},
                   {"out", o.out},
                   {"error_out", o.error_out},
                   {"sigma_delta_error_out", o.sd_error_out},
                   {"format", o.format}};
    j["signal_kind"] = fracq::kind_name(signal.kind);
    j["n"] = signal.values.size();
    j["delta"] = spec.delta;
    j["b"] = spec.b;
    j["m"] = spec.m;
    j["saturation_count"] = r.error.saturation_count;
    j["error_file"] = o.error_out;
    emit_report(j, o.report);
    return 0;
}

// ---------------------------------------------------------------- analyze --

struct AnalyzeOpts {
    std::string error_file;
    std::string signal_file;
    std::size_t max_lag = 50;
    std::string psd;
    std::string out;
};

int run_analyze(const AnalyzeOpts& o) {
    const fracq::ErrorSeries e = read_error(o.error_file);
    std::optional<fracq::SignalPath> signal;
    if (!o.signal_file.empty())
        signal = fracq::read_signal(o.signal_file);
    const auto uni = fracq::uniformity_test(e);
    const auto corr = fracq::correlation_report(
        e, signal ? &*signal : nullptr, o.max_lag);
    ordered_json j = base_report("analyze");
    j["config"] = {{"error", o.error_file},
                   {"signal", o.signal_file.empty() ? ordered_json(nullptr)
                                                    : ordered_json(o.signal_file)},
                   {"max_lag", o.max_lag},
                   {"psd", o.psd},
                   {"out", o.out}};
    j["n_samples"] = corr.n_samples;
    j["ks_statistic"] = uni.ks_statistic;
    j["ks_threshold"] = uni.threshold;
    j["ks_pass"] = uni.pass;
    j["sample_mean"] = uni.sample_mean;
    j["sample_variance"] = uni.sample_variance;
    j["autocovariance"] = corr.autocov;
    j["autocorrelation"] = corr.autocorr;
    j["max_abs_autocorr"] = corr.max_abs_autocorr_from(1);
    j["cross_corr_with_signal"] = num_or_null(corr.cross_corr_with_signal);
    if (!o.psd.empty()) {
        const auto s = fracq::periodogram(e.values);
        fracq::write_csv(o.psd, {"frequency", "power"}, {&s.frequencies, &s.power});
        j["psd"] = {{"slope_loglog", s.slope_loglog},
                    {"k_lo", s.k_lo},
                    {"k_hi", s.k_hi},
                    {"ordinates", s.power.size()}};
    } else {
        j["psd"] = nullptr;
    }
    emit_report(j, o.out);
    return 0;
}

// ------------------------------------------------------------------ eigen --

struct EigenOpts {
    std::string in;
    std::size_t window = 64;
    std::size_t fit_min = 2;
    std::size_t fit_max = 0;
    std::string anchor = "auto";
    std::string out;
    std::string report;
};

int run_eigen(const EigenOpts& o) {
    const fracq::SignalPath x = fracq::read_signal(o.in);
    const auto mode = parse_anchor(o.anchor);
    const auto m = fracq::covariance_matrix(x, o.window, mode);
    auto spec = fracq::eigenvalues_symmetric(m);
    spec.windows = x.values.size() / o.window;
    const double slope = fracq::fit_power_law(spec, o.fit_min, o.fit_max);
    if (!o.out.empty()) {
        std::vector<double> ranks(spec.eigenvalues.size());
        for (std::size_t k = 0; k < ranks.size(); ++k)
            ranks[k] = static_cast<double>(k + 1);
        fracq::write_csv(o.out, {"k", "lambda"}, {&ranks, &spec.eigenvalues});
    }
    ordered_json j = base_report("eigen");
    j["config"] = {{"in", o.in},         {"window", o.window},
                   {"fit_min", spec.fit_lo}, {"fit_max", spec.fit_hi},
                   {"anchor", o.anchor}, {"out", o.out}};
    j["signal_kind"] = fracq::kind_name(x.kind);
    j["windows"] = spec.windows;
    j["trace"] = m.trace();
    j["slope"] = slope;
    try {
        j["hurst_estimate"] = fracq::hurst_from_slope(slope);
    } catch (const fracq::OutOfRegimeError&) {
        j["hurst_estimate"] = nullptr;
    }
    try {
        const auto cr = fracq::crossover_detect(spec);
        j["breakpoint"] = cr.breakpoint;
        j["slope_left"] = cr.slope_left;
        j["slope_right"] = cr.slope_right;
        j["sse_ratio"] = num_or_null(cr.sse_ratio);
    } catch (const fracq::DomainError&) {
        j["breakpoint"] = nullptr;
        j["slope_left"] = nullptr;
        j["slope_right"] = nullptr;
        j["sse_ratio"] = nullptr;
    }
    emit_report(j, o.report);
    return 0;
}

// --------------------------------------------------------------------- cf --

struct CfOpts {
    double hurst = 0;
    double delta = 1.0;
    long l_max = 3;
    std::size_t n = 10000;
    std::string kind = "fgn";
    double threshold = 1e-6;
    std::string out;
    std::string report;
};

int run_cf(const CfOpts& o) {
    const fracq::Kind kind = parse_kind(o.kind);
    if (o.l_max < 0)
        throw fracq::DomainError("--l-max must be >= 0");
    std::vector<long> l_set;
    for (long l = 0; l <= o.l_max; ++l)
        l_set.push_back(l);
    const auto entries =
        fracq::verify_limit_dichotomy(o.hurst, o.delta, l_set, o.n, kind, o.threshold);
    if (!o.out.empty()) {
        std::vector<double> lcol, ncol, lmcol;
        for (long l : l_set) {
            const auto p = fracq::cf_magnitude_profile(o.hurst, o.delta, l, o.n,
                                                       kind, o.threshold);
            for (std::size_t n = 0; n < p.log_magnitudes.size(); ++n) {
                lcol.push_back(static_cast<double>(l));
                ncol.push_back(static_cast<double>(n));
                lmcol.push_back(p.log_magnitudes[n]);
            }
        }
        fracq::write_csv(o.out, {"l", "n", "log_magnitude"}, {&lcol, &ncol, &lmcol});
    }
    ordered_json j = base_report("cf");
    j["config"] = {{"hurst", o.hurst},   {"delta", o.delta},
                   {"l_max", o.l_max},   {"n", o.n},
                   {"kind", o.kind},     {"threshold", o.threshold},
                   {"out", o.out}};
    bool all_pass = true;
    ordered_json arr = ordered_json::array();
    for (const auto& ent : entries) {
        ordered_json row;
        row["l"] = ent.l;
        row["pass"] = ent.pass;
        row["monotone"] = ent.monotone;
        row["first_below"] = ent.first_below ? ordered_json(*ent.first_below)
                                             : ordered_json(nullptr);
        row["final_log_magnitude"] = ent.final_log_magnitude;
        arr.push_back(row);
        all_pass = all_pass && ent.pass;
    }
    j["entries"] = arr;
    j["pass"] = all_pass;
    emit_report(j, o.report);
    return 0;
}

// ------------------------------------------------------------- reproduce --

struct Fig1Opts {
    std::uint64_t seed = 7;
    std::size_t n = 1 << 14;
    std::string out_dir = "fig1";
};

int run_fig1(const Fig1Opts& o) {
    if (o.n < (1u << 12))
        throw fracq::DomainError("figure 1 reproduction needs n >= 4096");
    const auto path = fracq::fbm(0.2, o.n, o.seed, fracq::ConvRoute::fft);
    const auto spec = fracq::unit_step_spec(path);
    const auto q = fracq::quantize(path, spec);
    const auto s = fracq::periodogram(q.error.values);
    const fs::path dir(o.out_dir);
    fracq::write_csv(dir / "psd.csv", {"frequency", "power"},
                     {&s.frequencies, &s.power});
    ordered_json j = base_report("reproduce-fig1");
    j["config"] = {{"seed", o.seed},   {"n", o.n},
                   {"hurst", 0.2},     {"delta", spec.delta},
                   {"route", "fft"},   {"out_dir", o.out_dir}};
    j["b"] = spec.b;
    j["m"] = spec.m;
    j["saturation_count"] = q.error.saturation_count;
    j["slope_loglog"] = s.slope_loglog;
    j["band"] = 0.15;
    j["pass"] = std::fabs(s.slope_loglog) <= 0.15;
    emit_report(j, (dir / "report.json").string());
    return 0;
}

struct Fig2Opts {
    std::uint64_t seed = 7;
    std::size_t n = 1 << 16;
    std::size_t window = 64;
    std::string out_dir = "fig2";
};

void write_spectrum_csv(const fs::path& p, const fracq::EigenSpectrum& spec) {
    std::vector<double> ranks(spec.eigenvalues.size());
    for (std::size_t k = 0; k < ranks.size(); ++k)
        ranks[k] = static_cast<double>(k + 1);
    fracq::write_csv(p, {"k", "lambda"}, {&ranks, &spec.eigenvalues});
}

int run_fig2(const Fig2Opts& o) {
    if (o.n < (1u << 14))
        throw fracq::DomainError("figure 2 reproduction needs n >= 16384");
    const auto path = fracq::fbm(0.8, o.n, o.seed, fracq::ConvRoute::fft);
    const auto spec = fracq::unit_step_spec(path);
    const auto q = fracq::quantize(path, spec);

    auto path_spec = fracq::eigenvalues_symmetric(
        fracq::covariance_matrix(path, o.window));
    const double slope_path = fracq::fit_power_law(path_spec);

    auto quant_spec = fracq::eigenvalues_symmetric(
        fracq::covariance_matrix(q.quantized, o.window));
    const auto crossover = fracq::crossover_detect(quant_spec);

    fracq::SignalPath err_path;
    err_path.values = q.error.values;
    err_path.kind = fracq::Kind::white;
    auto err_spec = fracq::eigenvalues_symmetric(
        fracq::covariance_matrix(err_path, o.window));
    const double slope_err = fracq::fit_power_law(err_spec);

    const fs::path dir(o.out_dir);
    write_spectrum_csv(dir / "path_spectrum.csv", path_spec);
    write_spectrum_csv(dir / "quantized_spectrum.csv", quant_spec);
    write_spectrum_csv(dir / "error_spectrum.csv", err_spec);

    ordered_json j = base_report("reproduce-fig2");
    j["config"] = {{"seed", o.seed},     {"n", o.n},
                   {"hurst", 0.8},       {"delta", spec.delta},
                   {"window", o.window}, {"route", "fft"},
                   {"out_dir", o.out_dir}};
    j["saturation_count"] = q.error.saturation_count;
    j["path_slope"] = slope_path;
    j["path_band"] = {{"center", -2.6}, {"tolerance", 0.3}};
    j["path_pass"] = std::fabs(slope_path + 2.6) <= 0.3;
    try {
        j["hurst_estimate"] = fracq::hurst_from_slope(slope_path);
    } catch (const fracq::OutOfRegimeError&) {
        j["hurst_estimate"] = nullptr;
    }
    j["error_slope"] = slope_err;
    j["error_band"] = {{"center", 0.0}, {"tolerance", 0.2}};
    j["error_pass"] = std::fabs(slope_err) <= 0.2;
    j["crossover"] = {{"breakpoint", crossover.breakpoint},
                      {"slope_left", crossover.slope_left},
                      {"slope_right", crossover.slope_right},
                      {"sse_ratio", num_or_null(crossover.sse_ratio)}};
    j["crossover_pass"] =
        crossover.sse_ratio >= 2.0 && crossover.slope_left < crossover.slope_right;
    emit_report(j, (dir / "report.json").string());
    return 0;
}

// --------------------------------------------------------------- selftest --

int run_selftest() {
    struct Check {
        const char* name;
        bool (*fn)();
    };
    const Check checks[] = {
        {"weights_order_one_is_ones",
         [] {
             const auto w = fracq::weights(1.0, 100);
             for (double v : w.values)
                 if (v != 1.0)
                     return false;
             return true;
         }},
        {"partial_sums_shift_the_order",
         [] {
             const auto lhs = fracq::partial_sums(fracq::weights(0.3, 1000));
             const auto rhs = fracq::weights(1.3, 1000);
             for (std::size_t n = 0; n <= 1000; ++n)
                 if (std::fabs(lhs.values[n] - rhs.values[n]) >
                     1e-12 * std::fabs(rhs.values[n]))
                     return false;
             return true;
         }},
        {"root_bound_holds_from_two",
         [] { return fracq::lower_bound_holds(0.4, 1000).holds_from(2); }},
        {"half_hurst_is_white",
         [] {
             return fracq::fgn(0.5, 256, 11).values ==
                    fracq::gaussian_white(256, 11).values;
         }},
        {"fbm_routes_agree",
         [] {
             const auto a = fracq::fbm(0.7, 512, 3, fracq::ConvRoute::naive);
             const auto b = fracq::fbm(0.7, 512, 3, fracq::ConvRoute::fft);
             for (std::size_t i = 0; i < 512; ++i)
                 if (std::fabs(a.values[i] - b.values[i]) > 1e-9)
                     return false;
             return true;
         }},
        {"midtread_examples",
         [] {
             fracq::SignalPath p;
             p.values = {0.4, 0.5, 1.7};
             const auto r = fracq::quantize(p, fracq::QuantizerSpec::from_levels(1.0, 3));
             return r.quantized.values[0] == 0.0 && r.quantized.values[1] == 1.0 &&
                    r.quantized.values[2] == 1.0 && r.error.saturation_count == 1;
         }},
        {"sigma_delta_example",
         [] {
             fracq::SignalPath p;
             p.values = {0.3, 0.7};
             const auto e = fracq::sigma_delta_error(p, 1.0);
             return std::fabs(e.values[0] + 0.3) < 1e-12 && e.values[1] == 0.5;
         }},
        {"ks_statistic_on_exact_grid",
         [] {
             fracq::ErrorSeries e;
             e.values.resize(1000);
             for (std::size_t i = 0; i < 1000; ++i)
                 e.values[i] = -0.5 + (static_cast<double>(i) + 0.5) / 1000.0;
             const auto r = fracq::uniformity_test(e);
             return r.pass && std::fabs(r.ks_statistic - 0.0005) < 1e-12;
         }},
        {"periodogram_concentrates_cosine",
         [] {
             std::vector<double> x(256);
             for (std::size_t i = 0; i < 256; ++i)
                 x[i] = std::cos(2.0 * 3.14159265358979323846 * 16.0 *
                                 static_cast<double>(i) / 256.0);
             const auto s = fracq::periodogram(x);
             return s.power[15] > 1e8 * s.power[20];
         }},
        {"jacobi_two_by_two",
         [] {
             fracq::Matrix m(2);
             m.at(0, 0) = 2;
             m.at(0, 1) = 1;
             m.at(1, 0) = 1;
             m.at(1, 1) = 2;
             const auto s = fracq::eigenvalues_symmetric(m);
             return std::fabs(s.eigenvalues[0] - 3.0) < 1e-12 &&
                    std::fabs(s.eigenvalues[1] - 1.0) < 1e-12;
         }},
        {"planted_crossover_recovered",
         [] {
             fracq::EigenSpectrum spec;
             spec.eigenvalues.resize(48);
             for (std::size_t k = 1; k <= 48; ++k)
                 spec.eigenvalues[k - 1] =
                     k <= 16 ? std::pow(static_cast<double>(k), -2.6)
                             : std::pow(16.0, -2.6);
             const auto r = fracq::crossover_detect(spec);
             return r.breakpoint >= 15 && r.breakpoint <= 17 && r.sse_ratio >= 2.0;
         }},
        {"cf_half_hurst_closed_form",
         [] {
             const auto p = fracq::cf_magnitude_profile(0.5, 1.0, 1, 100, fracq::Kind::fgn);
             const double c = -2.0 * 3.14159265358979323846 *
                              3.14159265358979323846;
             for (std::size_t n = 0; n <= 100; ++n) {
                 const double ref = c * static_cast<double>(n + 1);
                 if (std::fabs(p.log_magnitudes[n] - ref) > 1e-12 * std::fabs(ref))
                     return false;
             }
             return true;
         }},
        {"container_roundtrip",
         [] {
             const fs::path p =
                 fs::temp_directory_path() / "fracq_selftest.fq";
             fracq::Container c;
             c.kind_code = fracq::kKindCodeFgn;
             c.hurst = 0.3;
             c.values = {1.0, -2.0, 0.5};
             fracq::write_container(p, c);
             const auto back = fracq::read_container(p);
             fs::remove(p);
             return back.kind_code == c.kind_code && back.hurst == c.hurst &&
                    back.values == c.values;
         }},
    };
    ordered_json j = base_report("selftest");
    j["config"] = ordered_json::object();
    ordered_json arr = ordered_json::array();
    bool all = true;
    for (const auto& c : checks) {
        bool ok = false;
        try {
            ok = c.fn();
        } catch (...) {
            ok = false;
        }
        arr.push_back({{"name", c.name}, {"pass", ok}});
        all = all && ok;
    }
    j["checks"] = arr;
    j["pass"] = all;
    emit_report(j, "");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional signal synthesis and quantization-error toolkit"};
    app.require_subcommand(1);

    WeightsOpts wo;
    auto* weights_cmd = app.add_subcommand("weights", "fractional-difference weights");
    weights_cmd->add_option("--d", wo.d, "fractional order in (-1/2, 5/2)")->required();
    weights_cmd->add_option("--n", wo.n, "max index (default 100)");
    weights_cmd->add_option("--out", wo.out, "CSV output path (index, weight)");
    weights_cmd->add_option("--report", wo.report, "write the JSON report here too");

    SynthOpts so;
    auto* synth_cmd = app.add_subcommand("synth", "synthesize a signal path");
    synth_cmd->add_option("--kind", so.kind, "white | fgn | fbm")
        ->required()
        ->check(CLI::IsMember({"white", "fgn", "fbm"}));
    synth_cmd->add_option("--hurst", so.hurst, "Hurst exponent in (0, 1)");
    synth_cmd->add_option("--n", so.n, "path length")->required();
    synth_cmd->add_option("--seed", so.seed, "RNG seed (default 0)");
    synth_cmd->add_option("--out", so.out, "output path")->required();
    synth_cmd->add_option("--format", so.format, "csv | binary (default csv)")
        ->check(CLI::IsMember({"csv", "binary"}));
    synth_cmd->add_flag("--fft", so.fft, "use the FFT convolution fast path");
    synth_cmd->add_option("--report", so.report, "write the JSON report here too");

    QuantizeOpts qo;
    auto* quant_cmd = app.add_subcommand("quantize", "uniform quantization and error series");
    quant_cmd->add_option("--in", qo.in, "input signal file (CSV or container)")->required();
    auto* lv = quant_cmd->add_option("--levels", qo.levels, "level count M >= 2");
    auto* hr = quant_cmd->add_option("--half-range", qo.half_range, "half range b > 0");
    auto* ah = quant_cmd->add_option("--auto-hires", qo.auto_hires,
                                     "derive the step from the signal spread at this ratio");
    quant_cmd->add_option("--out", qo.out, "quantized output path");
    quant_cmd->add_option("--error-out", qo.error_out, "raw error output path");
    quant_cmd->add_option("--sigma-delta-error-out", qo.sd_error_out,
                          "sigma-delta error output path");
    quant_cmd->add_option("--format", qo.format, "csv | binary (default csv)")
        ->check(CLI::IsMember({"csv", "binary"}));
    quant_cmd->add_option("--report", qo.report, "write the JSON sidecar here too");

    AnalyzeOpts ao;
    auto* analyze_cmd = app.add_subcommand("analyze", "error-series statistics");
    analyze_cmd->add_option("--error", ao.error_file, "error series file")->required();
    analyze_cmd->add_option("--signal", ao.signal_file, "signal file for cross-correlation");
    analyze_cmd->add_option("--max-lag", ao.max_lag, "autocorrelation lags (default 50)");
    analyze_cmd->add_option("--psd", ao.psd, "periodogram CSV output path");
    analyze_cmd->add_option("--out", ao.out, "JSON report output path");

    EigenOpts eo;
    auto* eigen_cmd = app.add_subcommand("eigen", "windowed auto-correlation eigen-spectrum");
    eigen_cmd->add_option("--in", eo.in, "input signal file")->required();
    eigen_cmd->add_option("--window", eo.window, "window length K (default 64)");
    eigen_cmd->add_option("--fit-min", eo.fit_min, "power-law fit lower rank (default 2)");
    eigen_cmd->add_option("--fit-max", eo.fit_max, "power-law fit upper rank (default K/2)");
    eigen_cmd->add_option("--anchor", eo.anchor, "auto | on | off (default auto)")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    eigen_cmd->add_option("--out", eo.out, "spectrum CSV output path (k, lambda)");
    eigen_cmd->add_option("--report", eo.report, "write the JSON report here too");

    CfOpts co;
    auto* cf_cmd = app.add_subcommand("cf", "characteristic-function magnitude profiles");
    cf_cmd->add_option("--hurst", co.hurst, "Hurst exponent in (0, 1)")->required();
    cf_cmd->add_option("--delta", co.delta, "quantizer step (default 1)");
    cf_cmd->add_option("--l-max", co.l_max, "profiles for l = 0..l_max (default 3)");
    cf_cmd->add_option("--n", co.n, "profile length (default 10000)");
    cf_cmd->add_option("--kind", co.kind, "fgn | fbm (default fgn)")
        ->check(CLI::IsMember({"fgn", "fbm"}));
    cf_cmd->add_option("--threshold", co.threshold, "dichotomy threshold (default 1e-6)");
    cf_cmd->add_option("--out", co.out, "profile CSV output path (l, n, log_magnitude)");
    cf_cmd->add_option("--report", co.report, "write the JSON report here too");

    Fig1Opts f1;
    auto* fig1_cmd = app.add_subcommand("reproduce-fig1",
                                        "quantization-error PSD flatness experiment");
    fig1_cmd->add_option("--seed", f1.seed, "RNG seed (default 7)");
    fig1_cmd->add_option("--n", f1.n, "path length (default 16384, min 4096)");
    fig1_cmd->add_option("--out-dir", f1.out_dir, "output directory (default fig1)");

    Fig2Opts f2;
    auto* fig2_cmd = app.add_subcommand("reproduce-fig2",
                                        "eigen-spectrum power-law experiment");
    fig2_cmd->add_option("--seed", f2.seed, "RNG seed (default 7)");
    fig2_cmd->add_option("--n", f2.n, "path length (default 65536, min 16384)");
    fig2_cmd->add_option("--window", f2.window, "window length K (default 64)");
    fig2_cmd->add_option("--out-dir", f2.out_dir, "output directory (default fig2)");

    auto* selftest_cmd = app.add_subcommand("selftest", "quick deterministic module checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(weights_cmd))
            return run_weights(wo);
        if (app.got_subcommand(synth_cmd))
            return run_synth(so);
        if (app.got_subcommand(quant_cmd)) {
            qo.has_levels = lv->count() > 0;
            qo.has_half_range = hr->count() > 0;
            qo.has_auto_hires = ah->count() > 0;
            return run_quantize(qo);
        }
        if (app.got_subcommand(analyze_cmd))
            return run_analyze(ao);
        if (app.got_subcommand(eigen_cmd))
            return run_eigen(eo);
        if (app.got_subcommand(cf_cmd))
            return run_cf(co);
        if (app.got_subcommand(fig1_cmd))
            return run_fig1(f1);
        if (app.got_subcommand(fig2_cmd))
            return run_fig2(f2);
        if (app.got_subcommand(selftest_cmd))
            return run_selftest();
    } catch (const fracq::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const fracq::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
