#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "exg/gof.hpp"
#include "support.hpp"

using exg::ExGaussParams;

namespace {

std::vector<double> draw(std::uint64_t seed, const ExGaussParams& p, std::size_t n) {
    exg::RngStream rng(seed);
    return exg::sample_exg(rng, p, n);
}

// sup |F_N - F| checked at every observation from both sides, counting ties
// directly.
double brute_force_distance(const std::vector<double>& xs, const ExGaussParams& p) {
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (double x : xs) {
        const double below = std::count_if(xs.begin(), xs.end(), [x](double y) { return y < x; }) / n;
        const double at = std::count_if(xs.begin(), xs.end(), [x](double y) { return y <= x; }) / n;
        const double f = exg::exgauss_cdf(x, p);
        d = std::max({d, std::abs(at - f), std::abs(f - below)});
    }
    return d;
}

}  // namespace

TEST(Ks, SingleObservationAtMedian) {
    const ExGaussParams p(500.0, 50.0, 100.0);
    const std::vector<double> xs{exg::zalp_exgauss(0.5, p)};
    EXPECT_NEAR(exg::ks_distance(xs, p), 0.5, 1e-12);
    EXPECT_NEAR(exg::ks_stat(xs, p), 0.5, 1e-12);
}

TEST(Ks, MidpointQuantilesGiveHalfOverN) {
    const ExGaussParams p(451.09, 47.33, 146.81);
    for (int n : {10, 100, 1000}) {
        std::vector<double> xs;
        for (int i = 1; i <= n; ++i) xs.push_back(exg::zalp_exgauss(1.0 - (i - 0.5) / n, p));
        EXPECT_NEAR(exg::ks_distance(xs, p), 0.5 / n, 1e-10) << n;
        EXPECT_NEAR(exg::ks_stat(xs, p), 0.5, 1e-7) << n;
    }
}

TEST(Ks, MatchesBruteForceProperty) {
    exg::test::Gen gen(81);
    for (int i = 0; i < 100; ++i) {
        const auto p = gen.params();
        auto xs = gen.exgauss_sample(gen.params(), gen.integer(1, 300));
        // Add ties.
        for (int k = 0; k < 5 && !xs.empty(); ++k) xs.push_back(xs[gen.integer(0, static_cast<int>(xs.size()) - 1)]);
        ASSERT_NEAR(exg::ks_distance(xs, p), brute_force_distance(xs, p), 1e-14) << i;
        ASSERT_EQ(exg::ks_stat(xs, p), static_cast<double>(xs.size()) * exg::ks_distance(xs, p));
    }
}

TEST(Ks, OrderDoesNotMatter) {
    const ExGaussParams p(500.0, 50.0, 100.0);
    auto xs = draw(1, p, 500);
    const double d = exg::ks_distance(xs, p);
    std::reverse(xs.begin(), xs.end());
    EXPECT_EQ(exg::ks_distance(xs, p), d);
}

TEST(Bootstrap, SingleReplicateGivesZeroOrOne) {
    const auto xs = draw(2, {500.0, 50.0, 100.0}, 300);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        exg::BootstrapOptions opt;
        opt.replicates = 1;
        opt.seed = seed;
        const auto r = exg::bootstrap_p(xs, opt);
        EXPECT_TRUE(r.p == 0.0 || r.p == 1.0) << r.p;
        EXPECT_EQ(r.ks_sd, 0.0);
    }
}

TEST(Bootstrap, ReportIsConsistent) {
    const auto xs = draw(3, {500.0, 50.0, 100.0}, 500);
    exg::BootstrapOptions opt;
    opt.replicates = 40;
    opt.seed = 9;
    const auto r = exg::bootstrap_p(xs, opt);
    ASSERT_EQ(r.replicate_ks.size(), 40u);
    const auto exceed = std::count_if(r.replicate_ks.begin(), r.replicate_ks.end(), [&](double k) { return k >= r.ks; });
    EXPECT_EQ(r.p, exceed / 40.0);
    double mean = 0.0;
    for (double k : r.replicate_ks) mean += k;
    mean /= 40.0;
    EXPECT_NEAR(r.ks_mean, mean, 1e-12);
    EXPECT_EQ(r.fitted, exg::max_lkhd(xs).params);
    EXPECT_EQ(r.ks, exg::ks_stat(xs, r.fitted));
}

TEST(Bootstrap, IdenticalAcrossThreadCounts) {
    const auto xs = draw(4, {500.0, 50.0, 100.0}, 400);
    exg::BootstrapOptions opt;
    opt.replicates = 24;
    opt.seed = 77;
    opt.threads = 1;
    const auto one = exg::bootstrap_p(xs, opt);
    for (unsigned t : {2u, 4u, 7u}) {
        opt.threads = t;
        const auto many = exg::bootstrap_p(xs, opt);
        EXPECT_EQ(many.replicate_ks, one.replicate_ks) << t;
        EXPECT_EQ(many.p, one.p);
    }
    opt.seed = 78;
    EXPECT_NE(exg::bootstrap_p(xs, opt).replicate_ks, one.replicate_ks);
}

TEST(Bootstrap, ScaleOfStatisticDoesNotChangeP) {
    const auto xs = draw(5, {500.0, 50.0, 100.0}, 300);
    exg::BootstrapOptions opt;
    opt.replicates = 30;
    opt.method = exg::Method::minsqr;
    const auto count = exg::bootstrap_p(xs, opt);
    opt.scale = exg::KsScale::classical;
    const auto classical = exg::bootstrap_p(xs, opt);
    EXPECT_EQ(count.p, classical.p);
    EXPECT_NEAR(count.ks, 300.0 * classical.ks, 1e-9);
}

TEST(Bootstrap, DetectsWrongModel) {
    // Uniform data are far from any ex-Gaussian at this size.
    exg::RngStream rng(6);
    std::vector<double> xs(3000);
    for (auto& x : xs) x = 100.0 * exg::drand(rng);
    exg::BootstrapOptions opt;
    opt.replicates = 50;
    EXPECT_EQ(exg::bootstrap_p(xs, opt).p, 0.0);
}

TEST(Bootstrap, RejectsInvalidOptions) {
    const auto xs = draw(7, {500.0, 50.0, 100.0}, 100);
    exg::BootstrapOptions opt;
    opt.method = exg::Method::stat;
    EXPECT_THROW(exg::bootstrap_p(xs, opt), exg::parameter_error);
    opt.method = exg::Method::maxlkhd;
    opt.replicates = 0;
    EXPECT_THROW(exg::bootstrap_p(xs, opt), exg::parameter_error);
}

TEST(Trim, CutsAreTailQuantiles) {
    const ExGaussParams p(451.09, 47.33, 146.81);
    const std::vector<double> xs{100.0, 350.0, 500.0, 900.0, 1472.0, 1473.0, 5000.0};
    const auto r = exg::trim_with(xs, 0.001, p);
    EXPECT_NEAR(r.hi_cut, 1472.846899622686650590382, 1e-9);
    EXPECT_NEAR(r.lo_cut, 341.114406205512, 1e-6);
    EXPECT_NEAR(exg::exgauss_cdf(r.lo_cut, p), 0.001, 1e-12);
    EXPECT_EQ(r.n_removed_left, 1u);  // 100
    EXPECT_EQ(r.n_removed_right, 2u);
    EXPECT_EQ(r.trimmed, (std::vector<double>{350.0, 500.0, 900.0, 1472.0}));
    EXPECT_EQ(r.n_total, 7u);
}

TEST(Trim, LeftCutCanBeDisabled) {
    const ExGaussParams p(451.09, 47.33, 146.81);
    const std::vector<double> xs{-1e6, 500.0, 1e6};
    const auto r = exg::trim_with(xs, 0.001, p, {.cut_left = false});
    EXPECT_EQ(r.lo_cut, -INFINITY);
    EXPECT_EQ(r.n_removed_left, 0u);
    EXPECT_EQ(r.trimmed, (std::vector<double>{-1e6, 500.0}));
}

TEST(Trim, ValuesOnCutAreKept) {
    const ExGaussParams p(0.0, 1.0, 1.0);
    const double hi = exg::zalp_exgauss(0.01, p);
    const std::vector<double> xs{0.0, hi};
    EXPECT_EQ(exg::trim_with(xs, 0.01, p).trimmed.size(), 2u);
}

TEST(Trim, IdempotentForFixedPreFitProperty) {
    exg::test::Gen gen(90);
    for (int i = 0; i < 50; ++i) {
        const auto p = gen.params();
        const auto xs = gen.exgauss_sample(p, 2000);
        const double tail = gen.uniform(0.001, 0.2);
        const auto once = exg::trim_with(xs, tail, p);
        const auto twice = exg::trim_with(once.trimmed, tail, p);
        ASSERT_EQ(twice.trimmed, once.trimmed);
        ASSERT_EQ(once.n_removed_left + once.n_removed_right + once.trimmed.size(), xs.size());
    }
}

TEST(Trim, NoOpOnInteriorData) {
    const ExGaussParams p(500.0, 50.0, 100.0);
    std::vector<double> xs;
    for (int i = 1; i < 100; ++i) xs.push_back(exg::zalp_exgauss(i / 100.0, p));
    const auto r = exg::trim_with(xs, 0.001, p);
    EXPECT_EQ(r.trimmed, xs);
}

TEST(Trim, FullPipelineRemovesAboutTheExpectedCount) {
    const auto xs = draw(8, {500.0, 50.0, 100.0}, 10000);
    const auto r = exg::trim(xs, 0.001);
    const auto removed = r.n_removed_left + r.n_removed_right;
    EXPECT_GE(removed, 7u);
    EXPECT_LE(removed, 33u);
}

TEST(Trim, RejectsBadTailFraction) {
    const std::vector<double> xs{1.0, 2.0, 3.0, 5.0};
    for (double t : {0.0, 0.5, 0.6, -0.1}) {
        EXPECT_THROW(exg::trim_with(xs, t, {0.0, 1.0, 1.0}), exg::parameter_error) << t;
        EXPECT_THROW(exg::trim(xs, t), exg::parameter_error) << t;
    }
}
