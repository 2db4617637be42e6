#pragma once

// The `exg` command-line tool. Everything lives here rather than in main()
// so the tests can drive the commands in-process.
//
// Exit codes: 0 success (including fits where some methods failed),
// 2 usage error, 3 bad input data, 4 numerical failure.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exg/exg.hpp"
#include "exg/io.hpp"
#include "exg/report.hpp"

namespace exg::cli {

enum ExitCode : int {
    ok = 0,
    usage = 2,
    input_data = 3,
    numerical = 4,
};

class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = parse_method(detail::trim_ws(item));
        if (!m) throw usage_error("unknown method '" + item + "' (expected stat, minsqr or maxlkhd)");
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) throw usage_error("no method given");
    return out;
}

// EXG_THREADS caps bootstrap parallelism; unset or 0 means all cores.
inline unsigned threads_from_env() {
    const char* v = std::getenv("EXG_THREADS");
    if (!v || !*v) return 0;
    unsigned n = 0;
    const std::string_view s(v);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw usage_error("EXG_THREADS must be a non-negative integer, got '" + std::string(s) + "'");
    }
    return n;
}

enum class Format { json, tsv };

struct Output {
    std::string path;  // empty: stdout
    Format format = Format::json;
};

struct Session {
    std::ostream& out;
    std::ostream& err;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    // Writes to `path`, or to `out` when it is empty.
    template <typename Writer>
    void emit(const std::string& path, Writer&& write) const {
        if (path.empty() || path == "-") {
            write(out);
            return;
        }
        std::ofstream f(path);
        if (!f) throw usage_error("cannot write '" + path + "'");
        write(f);
        if (!f) throw usage_error("error writing '" + path + "'");
    }

    void emit_report(const Report& r, const std::string& path) const {
        emit(path, [&r](std::ostream& os) { os << json(r).dump(2) << '\n'; });
    }
};

inline std::string na_or(std::optional<double> v) { return v ? format_double(*v) : "NA"; }

struct FitArgs {
    std::string file;
    std::string methods = "stat,minsqr,maxlkhd";
    std::optional<std::size_t> bins;
    double grad_tol = SearchConfig{}.grad_tol;
    Output output;
};

inline MethodFailure failure_of(Method m, const std::exception& e) {
    if (const auto* s = dynamic_cast<const skewness_out_of_range*>(&e)) {
        return {m, "skewness_out_of_range", e.what(), s->skewness()};
    }
    if (dynamic_cast<const numerical_error*>(&e)) return {m, "numerical", e.what(), std::nullopt};
    return {m, "parameter", e.what(), std::nullopt};
}

inline int cmd_fit(const FitArgs& a, const Session& io) {
    const auto methods = parse_methods(a.methods);
    const auto sample = read_sample(a.file);
    SearchConfig cfg;
    cfg.grad_tol = a.grad_tol;
    cfg.validate();

    Report rep;
    rep.command = "fit";
    rep.inputs = {{"file", a.file}, {"methods", a.methods}, {"grad_tol", a.grad_tol}, {"n", sample.size()},
                  {"bins", a.bins ? json(*a.bins) : json(nullptr)}};
    for (Method m : methods) {
        const std::string key(to_string(m));
        try {
            rep.results.emplace(key, fit(sample, m, cfg, a.bins));
        } catch (const data_error&) {
            throw;
        } catch (const parameter_error& e) {
            rep.results.emplace(key, failure_of(m, e));
        } catch (const numerical_error& e) {
            rep.results.emplace(key, failure_of(m, e));
        }
    }
    rep.wall_seconds = io.elapsed();

    for (const auto& [key, payload] : rep.results) {
        if (const auto* f = std::get_if<MethodFailure>(&payload)) io.err << "exg: " << key << ": " << f->message << '\n';
    }
    if (a.output.format == Format::json) {
        io.emit_report(rep, a.output.path);
        return ok;
    }
    io.emit(a.output.path, [&](std::ostream& os) {
        os << "method\tstatus\tmu\tsigma\ttau\tM\tS\tt\tobjective\titerations\tconverged\n";
        for (Method m : methods) {
            const auto& payload = rep.results.at(std::string(to_string(m)));
            os << to_string(m);
            if (const auto* f = std::get_if<MethodFailure>(&payload)) {
                os << "\tfailed:" << f->kind << "\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\n";
                continue;
            }
            const auto& r = std::get<FitResult>(payload);
            const auto st = r.stats();
            os << "\tok\t" << format_double(r.params.mu()) << '\t' << format_double(r.params.sigma()) << '\t'
               << format_double(r.params.tau()) << '\t' << format_double(st.m()) << '\t' << format_double(st.s())
               << '\t' << format_double(st.t()) << '\t' << na_or(r.objective) << '\t' << r.iterations << '\t'
               << (r.converged ? "true" : "false") << '\n';
        }
    });
    return ok;
}

struct QuantileArgs {
    double mu = 0.0, sigma = 0.0, tau = 0.0;
    double alpha = 0.0;
    Output output{{}, Format::tsv};
};

inline int cmd_quantile(const QuantileArgs& a, const Session& io) {
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw usage_error("--alpha must lie in (0, 1)");
    const ExGaussParams p(a.mu, a.sigma, a.tau);
    const double z = zalp_exgauss(a.alpha, p);
    if (a.output.format == Format::tsv) {
        io.emit(a.output.path, [z](std::ostream& os) { os << format_double(z) << '\n'; });
        return ok;
    }
    Report rep;
    rep.command = "quantile";
    rep.inputs = {{"mu", a.mu}, {"sigma", a.sigma}, {"tau", a.tau}, {"alpha", a.alpha}};
    rep.results.emplace("quantile", QuantileResult{p, a.alpha, z});
    rep.wall_seconds = io.elapsed();
    io.emit_report(rep, a.output.path);
    return ok;
}

struct SampleArgs {
    std::size_t n = 0;
    double mu = 0.0, sigma = 0.0, tau = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

inline int cmd_sample(const SampleArgs& a, const Session& io) {
    if (a.n < 1) throw usage_error("--n must be at least 1");
    const ExGaussParams p(a.mu, a.sigma, a.tau);
    RngStream rng(a.seed);
    io.emit(a.out, [&](std::ostream& os) {
        for (std::size_t i = 0; i < a.n; ++i) os << format_double(drand_exg(rng, p)) << '\n';
    });
    return ok;
}

struct GofArgs {
    std::string file;
    std::string method = "maxlkhd";
    std::size_t replicates = BootstrapOptions{}.replicates;
    std::uint64_t seed = 0;
    std::optional<std::size_t> bins;
    double grad_tol = SearchConfig{}.grad_tol;
    std::optional<unsigned> threads;
    Output output;
};

inline int cmd_gof(const GofArgs& a, const Session& io) {
    const auto methods = parse_methods(a.method);
    if (methods.size() != 1) throw usage_error("gof takes a single --method");
    if (methods[0] == Method::stat) throw usage_error("gof needs --method minsqr or maxlkhd");
    if (a.replicates < 1) throw usage_error("--replicates must be at least 1");
    const auto sample = read_sample(a.file);
    BootstrapOptions opt;
    opt.method = methods[0];
    opt.replicates = a.replicates;
    opt.seed = a.seed;
    opt.n_bins = a.bins;
    opt.search.grad_tol = a.grad_tol;
    opt.threads = a.threads ? *a.threads : threads_from_env();
    const auto g = bootstrap_p(sample, opt);

    if (a.output.format == Format::tsv) {
        io.emit(a.output.path, [&g](std::ostream& os) {
            os << "method\tks\tp\treplicates\tks_mean\tks_sd\tmu\tsigma\ttau\tredraws\n"
               << to_string(g.method) << '\t' << format_double(g.ks) << '\t' << format_double(g.p) << '\t'
               << g.replicates << '\t' << format_double(g.ks_mean) << '\t' << format_double(g.ks_sd) << '\t'
               << format_double(g.fitted.mu()) << '\t' << format_double(g.fitted.sigma()) << '\t'
               << format_double(g.fitted.tau()) << '\t' << g.redraws << '\n';
        });
        return ok;
    }
    Report rep;
    rep.command = "gof";
    rep.inputs = {{"file", a.file},          {"method", a.method},   {"replicates", a.replicates},
                  {"seed", a.seed},          {"grad_tol", a.grad_tol}, {"n", sample.size()},
                  {"bins", a.bins ? json(*a.bins) : json(nullptr)}};
    rep.results.emplace(std::string(to_string(g.method)), g);
    rep.wall_seconds = io.elapsed();
    io.emit_report(rep, a.output.path);
    return ok;
}

struct TrimArgs {
    std::string file;
    double tail = 0.001;
    bool no_left_cut = false;
    double grad_tol = SearchConfig{}.grad_tol;
    std::string out;     // trimmed data
    std::string report;  // report; stdout when empty
    Format format = Format::json;
};

inline int cmd_trim(const TrimArgs& a, const Session& io) {
    if (!(a.tail > 0.0 && a.tail < 0.5)) throw usage_error("--tail must lie in (0, 0.5)");
    const auto sample = read_sample(a.file);
    SearchConfig cfg;
    cfg.grad_tol = a.grad_tol;
    const auto t = trim(sample, a.tail, cfg, TrimOptions{!a.no_left_cut});
    if (!a.out.empty()) io.emit(a.out, [&t](std::ostream& os) { write_sample(os, t.trimmed); });

    if (a.format == Format::tsv) {
        io.emit(a.report, [&t](std::ostream& os) {
            os << "lo_cut\thi_cut\tn_removed_left\tn_removed_right\tn_total\tmu\tsigma\ttau\n"
               << (std::isfinite(t.lo_cut) ? format_double(t.lo_cut) : "NA") << '\t' << format_double(t.hi_cut)
               << '\t' << t.n_removed_left << '\t' << t.n_removed_right << '\t' << t.n_total << '\t'
               << format_double(t.pre_fit.mu()) << '\t' << format_double(t.pre_fit.sigma()) << '\t'
               << format_double(t.pre_fit.tau()) << '\n';
        });
        return ok;
    }
    Report rep;
    rep.command = "trim";
    rep.inputs = {{"file", a.file}, {"tail", a.tail}, {"cut_left", !a.no_left_cut}, {"grad_tol", a.grad_tol},
                  {"out", a.out}};
    rep.results.emplace("trim", t);
    rep.wall_seconds = io.elapsed();
    io.emit_report(rep, a.report);
    return ok;
}

struct PlotArgs {
    std::string file;
    std::string methods = "stat,minsqr,maxlkhd";
    std::optional<std::size_t> bins;
    double grad_tol = SearchConfig{}.grad_tol;
    std::string out;
};

// Histogram densities and fitted curves at the bin centres, one row per bin.
// A method that fails leaves its column as NA.
inline int cmd_plotdata(const PlotArgs& a, const Session& io) {
    const auto methods = parse_methods(a.methods);
    const auto sample = read_sample(a.file);
    SearchConfig cfg;
    cfg.grad_tol = a.grad_tol;
    const auto h = histogram(sample, a.bins);
    std::vector<std::optional<ExGaussParams>> fits;
    for (Method m : methods) {
        try {
            fits.emplace_back(fit(sample, m, cfg, h.n_bins()).params);
        } catch (const data_error&) {
            throw;
        } catch (const std::runtime_error& e) {
            io.err << "exg: " << to_string(m) << ": " << e.what() << '\n';
            fits.emplace_back();
        } catch (const std::logic_error& e) {
            io.err << "exg: " << to_string(m) << ": " << e.what() << '\n';
            fits.emplace_back();
        }
    }
    io.emit(a.out, [&](std::ostream& os) {
        os << "bin_center\tdensity";
        for (Method m : methods) os << "\tfitted_pdf_" << to_string(m);
        os << '\n';
        for (std::size_t i = 0; i < h.n_bins(); ++i) {
            const double c = h.center(i);
            os << format_double(c) << '\t' << format_double(h.densities()[i]);
            for (const auto& p : fits) os << '\t' << (p ? format_double(exgauss_pdf(c, *p)) : "NA");
            os << '\n';
        }
    });
    return ok;
}

inline void add_format(CLI::App* cmd, Format& f) {
    cmd->add_option("--format", f, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::json}, {"tsv", Format::tsv}}))
        ->option_text("json|tsv");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ex-Gaussian fitting, quantiles, sampling and goodness of fit"};
    app.name("exg");
    app.require_subcommand(1);

    FitArgs fa;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a sample by one or more methods");
    fit_cmd->add_option("file", fa.file, "Sample file, one value per line")->required();
    fit_cmd->add_option("--method", fa.methods, "Comma-separated subset of stat,minsqr,maxlkhd")
        ->capture_default_str();
    fit_cmd->add_option("--bins", fa.bins, "Histogram bins for minsqr")->check(CLI::PositiveNumber);
    fit_cmd->add_option("--grad-tol", fa.grad_tol, "Stopping tolerance")->check(CLI::PositiveNumber)
        ->capture_default_str();
    fit_cmd->add_option("--out", fa.output.path, "Output file (default stdout)");
    add_format(fit_cmd, fa.output.format);

    QuantileArgs qa;
    auto* q_cmd = app.add_subcommand("quantile", "Point with right-tail area alpha");
    q_cmd->add_option("--mu", qa.mu)->required();
    q_cmd->add_option("--sigma", qa.sigma)->required();
    q_cmd->add_option("--tau", qa.tau)->required();
    q_cmd->add_option("--alpha", qa.alpha, "Right-tail area in (0, 1)")->required();
    q_cmd->add_option("--out", qa.output.path, "Output file (default stdout)");
    add_format(q_cmd, qa.output.format);

    SampleArgs sa;
    auto* s_cmd = app.add_subcommand("sample", "Draw ex-Gaussian variates, one per line");
    s_cmd->add_option("--n", sa.n, "Number of variates")->required();
    s_cmd->add_option("--mu", sa.mu)->required();
    s_cmd->add_option("--sigma", sa.sigma)->required();
    s_cmd->add_option("--tau", sa.tau)->required();
    s_cmd->add_option("--seed", sa.seed)->capture_default_str();
    s_cmd->add_option("--out", sa.out, "Output file (default stdout)");

    GofArgs ga;
    auto* g_cmd = app.add_subcommand("gof", "Parametric bootstrap goodness of fit");
    g_cmd->add_option("file", ga.file, "Sample file, one value per line")->required();
    g_cmd->add_option("--method", ga.method, "minsqr or maxlkhd")->capture_default_str();
    g_cmd->add_option("--replicates", ga.replicates)->capture_default_str();
    g_cmd->add_option("--seed", ga.seed)->capture_default_str();
    g_cmd->add_option("--bins", ga.bins, "Histogram bins for minsqr")->check(CLI::PositiveNumber);
    g_cmd->add_option("--grad-tol", ga.grad_tol)->check(CLI::PositiveNumber)->capture_default_str();
    g_cmd->add_option("--threads", ga.threads, "Worker threads (default: EXG_THREADS, else all cores)");
    g_cmd->add_option("--out", ga.output.path, "Output file (default stdout)");
    add_format(g_cmd, ga.output.format);

    TrimArgs ta;
    auto* t_cmd = app.add_subcommand("trim", "Remove observations beyond model-based tail cuts");
    t_cmd->add_option("file", ta.file, "Sample file, one value per line")->required();
    t_cmd->add_option("--tail", ta.tail, "Tail area per side in (0, 0.5)")->capture_default_str();
    t_cmd->add_flag("--no-left-cut", ta.no_left_cut, "Only cut the right tail");
    t_cmd->add_option("--grad-tol", ta.grad_tol)->check(CLI::PositiveNumber)->capture_default_str();
    t_cmd->add_option("--out", ta.out, "File for the surviving observations");
    t_cmd->add_option("--report", ta.report, "Report file (default stdout)");
    add_format(t_cmd, ta.format);

    PlotArgs pa;
    auto* p_cmd = app.add_subcommand("plotdata", "Histogram and fitted densities at the bin centres");
    p_cmd->add_option("file", pa.file, "Sample file, one value per line")->required();
    p_cmd->add_option("--method", pa.methods)->capture_default_str();
    p_cmd->add_option("--bins", pa.bins)->check(CLI::PositiveNumber);
    p_cmd->add_option("--grad-tol", pa.grad_tol)->check(CLI::PositiveNumber)->capture_default_str();
    p_cmd->add_option("--out", pa.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : usage;
    }

    const Session io{out, err};
    try {
        if (*fit_cmd) return cmd_fit(fa, io);
        if (*q_cmd) return cmd_quantile(qa, io);
        if (*s_cmd) return cmd_sample(sa, io);
        if (*g_cmd) return cmd_gof(ga, io);
        if (*t_cmd) return cmd_trim(ta, io);
        if (*p_cmd) return cmd_plotdata(pa, io);
    } catch (const usage_error& e) {
        err << "exg: " << e.what() << '\n';
        return usage;
    } catch (const data_error& e) {
        err << "exg: " << e.what() << '\n';
        return input_data;
    } catch (const parameter_error& e) {
        err << "exg: " << e.what() << '\n';
        return usage;
    } catch (const numerical_error& e) {
        err << "exg: " << e.what() << '\n';
        return numerical;
    }
    return usage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"exg"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace exg::cli
