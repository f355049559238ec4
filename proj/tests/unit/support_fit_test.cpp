#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "taildep/datagen.hpp"
#include "taildep/estimators.hpp"
#include "taildep/support_fit.hpp"

using namespace taildep;

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

BivariateSample ray_sample(double theta, std::size_t n, std::uint64_t seed) {
    auto spec = gen::example1_spec();
    spec.mix_prob = 1.0;
    spec.cone = AngularCone(theta, theta);
    return gen::generate(spec, n, seed);
}

}  // namespace

TEST(Objective, FullConeIsWidthOne) {
    const RadialOrder ord(gen::example1(5000, 1), 100);
    EXPECT_EQ(support_objective(ord, 100, 0.0, 1.0, 1.0), 1.0);
}

TEST(Objective, RejectsInfeasiblePoints) {
    const RadialOrder ord(gen::example1(500, 1), 50);
    EXPECT_THROW(support_objective(ord, 50, 0.6, 0.5, 1.0), std::invalid_argument);
    EXPECT_THROW(support_objective(ord, 50, 0.2, 0.5, 0.0), std::invalid_argument);
}

TEST(Objective, RayBeatsWiderIntervalsOnRayData) {
    const RadialOrder ord(ray_sample(0.5, 10000, 2), 100);
    const double at_ray = support_objective(ord, 100, 0.5, 0.5, 1.0);
    EXPECT_EQ(at_ray, 0.0);
    for (double a : {0.0, 0.2, 0.45}) {
        for (double b : {0.55, 0.8, 1.0}) EXPECT_GT(support_objective(ord, 100, a, b, 1.0), at_ray + 0.05);
    }
}

TEST(EstimateSupport, ExampleOneLambdaOne) {
    // Base penalty: within 0.01 on every one of 20 seeds.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto est = estimate_support(RadialOrder(gen::example1(30000, seed), 100), 100);
        EXPECT_NEAR(est.a_hat, 0.25, 0.01) << "seed " << seed;
        EXPECT_NEAR(est.b_hat, 0.75, 0.01) << "seed " << seed;
    }
}

TEST(EstimateSupport, ExampleTwoHeavyPenalty) {
    // lambda = 16: the lower endpoint is recovered and the upper
    // one falls short of the true 0.75 (median over 20 seeds).
    SupportFitOptions opts;
    opts.lambda = 16.0;
    std::vector<double> a, b;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto est = estimate_support(RadialOrder(gen::example2(30000, seed), 100), 100, opts);
        a.push_back(est.a_hat);
        b.push_back(est.b_hat);
    }
    EXPECT_NEAR(median(a), 0.251, 0.03);
    EXPECT_LT(median(b), 0.75);
    EXPECT_GT(median(b), median(a));
}

TEST(EstimateSupport, RayData) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto est = estimate_support(RadialOrder(ray_sample(0.5, 10000, seed), 100), 100);
        EXPECT_NEAR(est.a_hat, 0.5, 0.02);
        EXPECT_NEAR(est.b_hat, 0.5, 0.02);
    }
}

TEST(EstimateSupport, FeasibleTraceAndNeverWorseThanGrid) {
    SupportFitOptions opts;
    opts.grid_size = 21;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto est = estimate_support(RadialOrder(gen::example2(3000, seed), 100), 100, opts);
        const std::size_t grid_points = 21 * 22 / 2;
        ASSERT_GE(est.trace.size(), grid_points);
        double grid_best = 1e300;
        for (std::size_t i = 0; i < est.trace.size(); ++i) {
            const auto& e = est.trace[i];
            ASSERT_LE(0.0, e.a);
            ASSERT_LE(e.a, e.b);
            ASSERT_LE(e.b, 1.0);
            if (i < grid_points) grid_best = std::min(grid_best, e.value);
        }
        EXPECT_LE(est.objective_value, grid_best);
        EXPECT_LE(0.0, est.a_hat);
        EXPECT_LE(est.a_hat, est.b_hat);
        EXPECT_LE(est.b_hat, 1.0);
    }
}

TEST(EstimateSupport, Deterministic) {
    const RadialOrder ord(gen::example1(30000, 3), 100);
    const auto x = estimate_support(ord, 100);
    const auto y = estimate_support(ord, 100);
    EXPECT_EQ(x.a_hat, y.a_hat);
    EXPECT_EQ(x.b_hat, y.b_hat);
    EXPECT_EQ(x.trace.size(), y.trace.size());
}

TEST(EstimateSupport, ConsistencyAsSampleGrows) {
    // The median error is already zero at n = 3000, so the trend is read off the mean.
    std::vector<double> medians, means;
    for (std::size_t n : {3000u, 10000u, 30000u}) {
        std::vector<double> err;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const auto est = estimate_support(RadialOrder(gen::example1(n, seed), 100), 100);
            err.push_back(std::max(std::fabs(est.a_hat - 0.25), std::fabs(est.b_hat - 0.75)));
        }
        medians.push_back(median(err));
        double s = 0.0;
        for (double e : err) s += e;
        means.push_back(s / static_cast<double>(err.size()));
    }
    EXPECT_LE(medians[1], medians[0]);
    EXPECT_LE(medians[2], medians[1]);
    EXPECT_LT(means[1], means[0]);
    EXPECT_LT(means[2], means[1]);
}

TEST(SupportFitOptions, Validation) {
    SupportFitOptions o;
    o.grid_size = 1;
    EXPECT_THROW(o.validate(), std::invalid_argument);
    o = {};
    o.lambda = -1.0;
    EXPECT_THROW(o.validate(), std::invalid_argument);
}
