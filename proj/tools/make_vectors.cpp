// Regenerates tests/data/shared_vectors.json, the reference values every
// language front end is checked against.
//
//   exg_make_vectors > tests/data/shared_vectors.json

#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "exg/exg.hpp"

using nlohmann::json;

namespace {

json params_json(const exg::ExGaussParams& p) { return {p.mu(), p.sigma(), p.tau()}; }

json sample_spec(std::uint64_t seed, std::size_t n, const exg::ExGaussParams& p) {
    return {{"seed", seed}, {"n", n}, {"params", params_json(p)}};
}

std::vector<double> draw(std::uint64_t seed, std::size_t n, const exg::ExGaussParams& p) {
    exg::RngStream rng(seed);
    return exg::sample_exg(rng, p, n);
}

}  // namespace

int main(int argc, char** argv) {
    json cases = json::array();
    int id = 0;
    const auto add = [&](std::string op, json args, json expected) {
        cases.push_back({{"id", id++}, {"op", std::move(op)}, {"args", std::move(args)}, {"expected", std::move(expected)}});
    };

    const std::vector<exg::ExGaussParams> grid{
        {500.0, 50.0, 100.0}, {451.09, 47.33, 146.81}, {0.0, 1.0, 0.1}, {0.0, 0.2, 1.0}, {300.0, 80.0, 20.0},
    };
    for (const auto& p : grid) {
        const double m = p.mu() + p.tau();
        const double s = std::hypot(p.sigma(), p.tau());
        for (double k : {-3.0, -1.0, 0.0, 1.5, 4.0, 8.0}) {
            const double x = m + k * s;
            add("pdf", {{"x", x}, {"params", params_json(p)}}, exg::exgauss_pdf(x, p));
            add("cdf", {{"x", x}, {"params", params_json(p)}}, exg::exgauss_cdf(x, p));
        }
        add("log_pdf", {{"x", m + 30.0 * s}, {"params", params_json(p)}}, exg::exgauss_log_pdf(m + 30.0 * s, p));
        for (double alpha : {0.001, 0.05, 0.5, 0.9}) {
            add("quantile", {{"alpha", alpha}, {"params", params_json(p)}}, exg::zalp_exgauss(alpha, p));
        }
        const auto st = exg::pars_to_stats(p);
        add("pars_to_stats", {{"params", params_json(p)}}, json{st.m(), st.s(), st.t()});
    }
    for (double lamb : {0.05, 0.2, 0.5, 0.9}) {
        add("pdf_lamb", {{"z", 1.0}, {"lambda", lamb}}, exg::exgauss_pdf_lamb(1.0, lamb));
        add("cdf_lamb", {{"z", -0.5}, {"lambda", lamb}}, exg::exgauss_cdf_lamb(-0.5, lamb));
        add("quantile_lamb", {{"alpha", 0.05}, {"lambda", lamb}}, exg::zalp_exgauss_lamb(0.05, lamb));
    }
    const std::vector<std::array<double, 3>> msts{
        {831.14, 318.95, 1.75}, {1189.64, 416.92, 0.88}, {600.0, 111.8, 1.43}, {0.0, 1.0, 0.01},
    };
    for (const auto& [m, s, t] : msts) {
        add("stats_to_pars", {{"stats", {m, s, t}}}, params_json(exg::stats_to_pars(exg::ExGaussStats(m, s, t))));
    }
    for (double t : {2.71, 2.0, -0.3}) {
        add("stats_to_pars", {{"stats", {597.90, 169.90, t}}}, {{"error", "skewness_out_of_range"}});
    }

    const std::vector<std::tuple<std::uint64_t, std::size_t, exg::ExGaussParams>> samples{
        {1, 500, {500.0, 50.0, 100.0}}, {2, 2000, {451.09, 47.33, 146.81}}, {3, 1000, {0.0, 1.0, 2.0}},
    };
    for (const auto& [seed, n, p] : samples) {
        const auto xs = draw(seed, n, p);
        add("sample_head", sample_spec(seed, n, p), json(std::vector<double>(xs.begin(), xs.begin() + 5)));
        for (auto m : {exg::Method::stat, exg::Method::minsqr, exg::Method::maxlkhd}) {
            try {
                const auto r = exg::fit(xs, m, {});
                add("fit", {{"sample", sample_spec(seed, n, p)}, {"method", exg::to_string(m)}}, params_json(r.params));
            } catch (const exg::skewness_out_of_range&) {
                add("fit", {{"sample", sample_spec(seed, n, p)}, {"method", exg::to_string(m)}},
                    {{"error", "skewness_out_of_range"}});
            }
        }
        add("ks_stat", {{"sample", sample_spec(seed, n, p)}, {"params", params_json(p)}}, exg::ks_stat(xs, p));
    }

    const json doc = {{"format_version", 1}, {"cases", cases}};
    if (argc > 1) {
        std::ofstream f(argv[1]);
        if (!f) {
            std::cerr << "cannot write " << argv[1] << '\n';
            return 1;
        }
        f << doc.dump(1) << '\n';
    } else {
        std::cout << doc.dump(1) << '\n';
    }
    std::cerr << cases.size() << " cases\n";
}
