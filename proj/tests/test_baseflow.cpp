#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <gtest/gtest.h>

#include "mos/baseflow.hpp"

namespace {

using mos::BaseFlow;
using mos::extrema;
using mos::make_profile;

constexpr int kSamples = 10000;

double sampled_max_abs(const mos::Polynomial& p) {
    double best = 0.0;
    for (int k = 0; k <= kSamples; ++k) best = std::max(best, std::abs(p(static_cast<double>(k) / kSamples)));
    return best;
}

// Dense sampling followed by a Brent refinement on the neighbouring cells.
double refined_max_abs(const mos::Polynomial& p) {
    int best_k = 0;
    double best = -1.0;
    for (int k = 0; k <= kSamples; ++k) {
        const double v = std::abs(p(static_cast<double>(k) / kSamples));
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    const double lo = std::max(0, best_k - 1) / static_cast<double>(kSamples);
    const double hi = std::min(kSamples, best_k + 1) / static_cast<double>(kSamples);
    const auto [y, neg] =
        boost::math::tools::brent_find_minima([&](double t) { return -std::abs(p(t)); }, lo, hi, 52);
    (void)y;
    return std::max(best, -neg);
}

mos::Polynomial random_polynomial(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    Eigen::VectorXd c(degree + 1);
    for (int k = 0; k <= degree; ++k) c(k) = coeff(rng);
    return mos::Polynomial(c);
}

TEST(BaseFlowTest, CouetteProfile) {
    const BaseFlow f = make_profile("couette");
    EXPECT_DOUBLE_EQ(f.u()(0.5), 0.5);
    EXPECT_TRUE(f.w().is_zero());
}

TEST(BaseFlowTest, PoiseuilleProfile) {
    const BaseFlow f = make_profile("poiseuille");
    EXPECT_DOUBLE_EQ(f.u()(0.5), 1.0);
    EXPECT_EQ(f.d2u().degree(), 0);
    EXPECT_DOUBLE_EQ(f.d2u()(0.3), -8.0);
}

TEST(BaseFlowTest, CustomCoefficients) {
    const BaseFlow f = make_profile({0, 0, 1}, {0});
    EXPECT_DOUBLE_EQ(f.du()(1.0), 2.0);
}

TEST(BaseFlowTest, RejectsUnknownNameAndHighDegree) {
    EXPECT_THROW(make_profile("plug"), std::invalid_argument);
    EXPECT_THROW(make_profile(std::vector<double>(18, 1.0), {0}), std::invalid_argument);
    EXPECT_NO_THROW(make_profile(std::vector<double>(17, 1.0), {0}));
    EXPECT_THROW(make_profile({0, NAN}, {0}), std::invalid_argument);
}

TEST(BaseFlowTest, CouetteExtrema) {
    const auto e = extrema(make_profile("couette"));
    EXPECT_DOUBLE_EQ(e.q1, 1.0);
    EXPECT_DOUBLE_EQ(e.q2, 0.0);
    EXPECT_DOUBLE_EQ(e.upp_min, 0.0);
    EXPECT_DOUBLE_EQ(e.upp_max, 0.0);
}

TEST(BaseFlowTest, PoiseuilleExtrema) {
    const auto e = extrema(make_profile("poiseuille"));
    EXPECT_DOUBLE_EQ(e.q1, 4.0);
    EXPECT_DOUBLE_EQ(e.upp_min, -8.0);
    EXPECT_DOUBLE_EQ(e.upp_max, -8.0);
    EXPECT_NEAR(e.u_max, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(e.u_min, 0.0);
}

TEST(BaseFlowTest, MicrorotationSlope) {
    const auto e = extrema(make_profile({0, 1}, {0, 0, 1}));
    EXPECT_DOUBLE_EQ(e.q2, 2.0);
    EXPECT_DOUBLE_EQ(e.wp_min, 0.0);
    EXPECT_DOUBLE_EQ(e.wp_max, 2.0);
}

TEST(BaseFlowTest, OrderedExtrema) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const BaseFlow f(random_polynomial(rng, 6), random_polynomial(rng, 5));
        const auto e = extrema(f);
        EXPECT_LE(e.u_min, e.u_max);
        EXPECT_LE(e.upp_min, e.upp_max);
        EXPECT_LE(e.wp_min, e.wp_max);
        EXPECT_GE(e.q1, 0.0);
        EXPECT_GE(e.q2, 0.0);
    }
}

// Raw sampling never exceeds the exact maximum, and sampling refined by a local
// one-dimensional maximisation reproduces it to 1e-10.
TEST(BaseFlowTest, ExtremaAgreeWithDenseSampling) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const BaseFlow f(random_polynomial(rng, 1 + trial % 9), random_polynomial(rng, 1 + trial % 7));
        const auto e = extrema(f);
        EXPECT_LE(sampled_max_abs(f.du()), e.q1 + 1e-12);
        EXPECT_LE(sampled_max_abs(f.dw()), e.q2 + 1e-12);
        EXPECT_NEAR(refined_max_abs(f.du()), e.q1, 1e-10);
        EXPECT_NEAR(refined_max_abs(f.dw()), e.q2, 1e-10);
    }
}

TEST(BaseFlowTest, EndpointMaximaMatchSamplingExactly) {
    // |U'| is maximal at an endpoint, which the uniform grid contains.
    const auto e = extrema(make_profile({0, 4, -4}, {0, 1, 0, 1}));
    EXPECT_NEAR(sampled_max_abs(make_profile({0, 4, -4}, {0}).du()), e.q1, 1e-12);
    EXPECT_NEAR(sampled_max_abs(make_profile({0}, {0, 1, 0, 1}).dw()), e.q2, 1e-12);
}

TEST(BaseFlowTest, ScalingScalesExtrema) {
    std::mt19937_64 rng(11);
    for (double c : {3.0, 0.25, -2.5}) {
        const BaseFlow f(random_polynomial(rng, 7), random_polynomial(rng, 4));
        const auto e = extrema(f);
        const auto s = extrema(f.scaled(c));
        const double tol = 1e-13 * (1.0 + std::abs(c));
        EXPECT_NEAR(s.q1, std::abs(c) * e.q1, tol);
        EXPECT_NEAR(s.q2, std::abs(c) * e.q2, tol);
        const double lo = c > 0 ? e.u_min : e.u_max;
        const double hi = c > 0 ? e.u_max : e.u_min;
        EXPECT_NEAR(s.u_min, c * lo, tol);
        EXPECT_NEAR(s.u_max, c * hi, tol);
        EXPECT_NEAR(s.upp_min, c * (c > 0 ? e.upp_min : e.upp_max), tol * 10);
        EXPECT_NEAR(s.upp_max, c * (c > 0 ? e.upp_max : e.upp_min), tol * 10);
    }
}

TEST(BaseFlowTest, ReflectionMapsProfiles) {
    const BaseFlow f = make_profile({0.1, 2, -3, 1}, {0, 1, 1});
    const BaseFlow r = f.reflected();
    for (double y : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(r.u()(y), f.u()(1.0 - y), 1e-14);
        EXPECT_NEAR(r.w()(y), -f.w()(1.0 - y), 1e-14);
    }
}

TEST(BaseFlowTest, RootsInUnitInterval) {
    // (y - 0.25)(y - 0.75)(y - 2) has two roots in [0, 1].
    const mos::Polynomial p({-0.375, 2.1875, -3.0, 1.0});
    auto roots = mos::real_roots_in_unit_interval(p);
    std::sort(roots.begin(), roots.end());
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_NEAR(roots[0], 0.25, 1e-14);
    EXPECT_NEAR(roots[1], 0.75, 1e-14);
}

}  // namespace
