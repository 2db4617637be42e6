#pragma once

// JSON encoding of fit, goodness-of-fit and trim results, and the report
// envelope written by the command-line tool. The layout is described by
// schema/report.schema.json; bump `report_schema_version` on any breaking
// change.

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "exg/estimation.hpp"
#include "exg/gof.hpp"
#include "exg/params.hpp"

namespace exg {

inline constexpr const char* report_schema_version = "1.0.0";

using json = nlohmann::json;

namespace detail {

inline json optional_number(std::optional<double> v) {
    return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

inline Method method_from_json(const json& j) {
    const auto m = parse_method(j.get<std::string>());
    if (!m) throw json::other_error::create(501, "unknown method '" + j.get<std::string>() + "'", &j);
    return *m;
}

inline Termination termination_from_json(const json& j) {
    const auto s = j.get<std::string>();
    for (auto t : {Termination::none, Termination::converged, Termination::max_iterations,
                   Termination::line_search_failed}) {
        if (s == to_string(t)) return t;
    }
    throw json::other_error::create(501, "unknown termination '" + s + "'", &j);
}

}  // namespace detail

/// A method that could not produce a result.
struct MethodFailure {
    Method method;
    std::string kind;  // "skewness_out_of_range", "numerical", "parameter", "data"
    std::string message;
    std::optional<double> skewness;

    friend bool operator==(const MethodFailure&, const MethodFailure&) = default;
};

/// Right-tail point z with area `alpha` under `params`.
struct QuantileResult {
    ExGaussParams params;
    double alpha;
    double z;

    friend bool operator==(const QuantileResult&, const QuantileResult&) = default;
};

using ResultPayload = std::variant<FitResult, GofReport, TrimReport, QuantileResult, MethodFailure>;

struct Report {
    std::string schema_version = report_schema_version;
    std::string command;
    json inputs = json::object();
    std::map<std::string, ResultPayload> results;
    double wall_seconds = 0.0;
};

}  // namespace exg

namespace nlohmann {

template <>
struct adl_serializer<exg::ExGaussParams> {
    static void to_json(json& j, const exg::ExGaussParams& p) {
        j = {{"mu", p.mu()}, {"sigma", p.sigma()}, {"tau", p.tau()}};
    }
    static exg::ExGaussParams from_json(const json& j) {
        return {j.at("mu").get<double>(), j.at("sigma").get<double>(), j.at("tau").get<double>()};
    }
};

template <>
struct adl_serializer<exg::ExGaussStats> {
    static void to_json(json& j, const exg::ExGaussStats& s) {
        j = {{"M", s.m()}, {"S", s.s()}, {"t", s.t()}, {"lambda", exg::detail::optional_number(s.lamb())}};
    }
    static exg::ExGaussStats from_json(const json& j) {
        return {j.at("M").get<double>(), j.at("S").get<double>(), j.at("t").get<double>()};
    }
};

template <>
struct adl_serializer<exg::FitResult> {
    static void to_json(json& j, const exg::FitResult& r) {
        j = {{"status", "ok"},
             {"kind", "fit"},
             {"method", exg::to_string(r.method)},
             {"params", r.params},
             {"stats", r.stats()},
             {"objective", exg::detail::optional_number(r.objective)},
             {"iterations", r.iterations},
             {"gradient_norm", r.gradient_norm},
             {"converged", r.converged},
             {"termination", exg::to_string(r.termination)},
             {"n_bins", r.n_bins ? json(*r.n_bins) : json(nullptr)}};
    }
    static exg::FitResult from_json(const json& j) {
        exg::FitResult r(j.at("params").get<exg::ExGaussParams>(), exg::detail::method_from_json(j.at("method")));
        if (!j.at("objective").is_null()) r.objective = j.at("objective").get<double>();
        r.iterations = j.at("iterations").get<int>();
        r.gradient_norm = j.at("gradient_norm").get<double>();
        r.converged = j.at("converged").get<bool>();
        r.termination = exg::detail::termination_from_json(j.at("termination"));
        if (!j.at("n_bins").is_null()) r.n_bins = j.at("n_bins").get<std::size_t>();
        return r;
    }
};

template <>
struct adl_serializer<exg::GofReport> {
    static void to_json(json& j, const exg::GofReport& r) {
        j = {{"status", "ok"},
             {"kind", "gof"},
             {"method", exg::to_string(r.method)},
             {"ks", r.ks},
             {"p", r.p},
             {"replicates", r.replicates},
             {"ks_mean", r.ks_mean},
             {"ks_sd", r.ks_sd},
             {"seed", r.seed},
             {"fitted", r.fitted},
             {"redraws", r.redraws},
             {"replicate_ks", r.replicate_ks}};
    }
    static exg::GofReport from_json(const json& j) {
        exg::GofReport r{j.at("ks").get<double>(),
                         j.at("p").get<double>(),
                         j.at("replicates").get<std::size_t>(),
                         j.at("ks_mean").get<double>(),
                         j.at("ks_sd").get<double>(),
                         exg::detail::method_from_json(j.at("method")),
                         j.at("seed").get<std::uint64_t>(),
                         j.at("fitted").get<exg::ExGaussParams>(),
                         j.at("replicate_ks").get<std::vector<double>>()};
        r.redraws = j.at("redraws").get<std::size_t>();
        return r;
    }
};

template <>
struct adl_serializer<exg::TrimReport> {
    // The trimmed observations go to a separate data file, not the report.
    static void to_json(json& j, const exg::TrimReport& r) {
        j = {{"status", "ok"},
             {"kind", "trim"},
             {"lo_cut", exg::detail::optional_number(r.lo_cut)},
             {"hi_cut", r.hi_cut},
             {"n_removed_left", r.n_removed_left},
             {"n_removed_right", r.n_removed_right},
             {"n_total", r.n_total},
             {"n_kept", r.n_total - r.n_removed_left - r.n_removed_right},
             {"pre_fit", r.pre_fit}};
    }
    static exg::TrimReport from_json(const json& j) {
        return {j.at("lo_cut").is_null() ? -std::numeric_limits<double>::infinity() : j.at("lo_cut").get<double>(),
                j.at("hi_cut").get<double>(),
                j.at("n_removed_left").get<std::size_t>(),
                j.at("n_removed_right").get<std::size_t>(),
                j.at("n_total").get<std::size_t>(),
                j.at("pre_fit").get<exg::ExGaussParams>(),
                {}};
    }
};

template <>
struct adl_serializer<exg::QuantileResult> {
    static void to_json(json& j, const exg::QuantileResult& q) {
        j = {{"status", "ok"}, {"kind", "quantile"}, {"params", q.params}, {"alpha", q.alpha}, {"z", q.z}};
    }
    static exg::QuantileResult from_json(const json& j) {
        return {j.at("params").get<exg::ExGaussParams>(), j.at("alpha").get<double>(), j.at("z").get<double>()};
    }
};

template <>
struct adl_serializer<exg::MethodFailure> {
    static void to_json(json& j, const exg::MethodFailure& f) {
        j = {{"status", "failed"},
             {"method", exg::to_string(f.method)},
             {"error", {{"kind", f.kind}, {"message", f.message}, {"t", exg::detail::optional_number(f.skewness)}}}};
    }
    static exg::MethodFailure from_json(const json& j) {
        const auto& e = j.at("error");
        exg::MethodFailure f{exg::detail::method_from_json(j.at("method")), e.at("kind").get<std::string>(),
                             e.at("message").get<std::string>(), std::nullopt};
        if (!e.at("t").is_null()) f.skewness = e.at("t").get<double>();
        return f;
    }
};

template <>
struct adl_serializer<exg::ResultPayload> {
    static void to_json(json& j, const exg::ResultPayload& p) {
        std::visit([&j](const auto& v) { j = v; }, p);
    }
    static exg::ResultPayload from_json(const json& j) {
        if (j.at("status").get<std::string>() == "failed") return j.get<exg::MethodFailure>();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "fit") return j.get<exg::FitResult>();
        if (kind == "gof") return j.get<exg::GofReport>();
        if (kind == "trim") return j.get<exg::TrimReport>();
        if (kind == "quantile") return j.get<exg::QuantileResult>();
        throw json::other_error::create(501, "unknown result kind '" + kind + "'", &j);
    }
};

template <>
struct adl_serializer<exg::Report> {
    static void to_json(json& j, const exg::Report& r) {
        j = {{"schema_version", r.schema_version},
             {"command", r.command},
             {"inputs", r.inputs},
             {"results", r.results},
             {"timing", {{"wall_seconds", r.wall_seconds}}}};
    }
    static exg::Report from_json(const json& j) {
        exg::Report r;
        r.schema_version = j.at("schema_version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        r.results = j.at("results").get<std::map<std::string, exg::ResultPayload>>();
        r.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
        return r;
    }
};

}  // namespace nlohmann
