#include "scissors/periods.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <map>
#include <numbers>
#include <numeric>
#include <random>

using namespace scissors;
using scissors::testing::random_simplex;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST(Periods, KummerSegmentGivesTwiceTheLength) {
    for (auto [a, b] : {std::pair{-0.3, 0.5}, std::pair{0.1, 0.9}, std::pair{-0.8, -0.2}}) {
        auto pm = period_matrix_h1(a, b, -1.0, 1.0);
        EXPECT_NEAR(pm.entries(1, 0).real(), 2 * (std::atanh(b) - std::atanh(a)), 1e-13);
        EXPECT_NEAR(pm.entries(1, 0).imag(), 0, 1e-15);
    }
    EXPECT_THROW(period_matrix_h1(0.5, 0.5, -1.0, 1.0), std::invalid_argument);
}

TEST(Periods, IdealTriangleRegularizedLengthIsHorosphereIndependent) {
    // lx is the limit of differences of truncated vertical sides
    for (auto [q, r] : {std::pair{0.2, 0.7}, std::pair{0.35, 0.6}}) {
        auto h = ideal_triangle_periods(0.0, q, r, 1.0, std::nullopt);
        for (double R : {10.0, 1e3})
            EXPECT_NEAR(2 * h.lx, 2 * truncated_length_difference(h.t1, h.t2, R), 1e-9);
    }
}

TEST(Periods, RealPeriodIsVolume) {
    std::mt19937_64 rng(60);
    for (int i = 0; i < 50; ++i) {
        auto s = random_simplex(3, rng);
        EXPECT_NEAR(4 * pi * pi * real_period(period_matrix_h3(s)), vol_h3(s), 1e-12);
    }
}

TEST(Periods, IdealVariantCarriesCuspAngles) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
        auto s = random_simplex(3, rng, 1);
        auto pm = period_matrix_h3_ideal(s);
        ASSERT_EQ(pm.size(), 7);
        EXPECT_NEAR(pm.cusp_angles[0] + pm.cusp_angles[1] + pm.cusp_angles[2], pi, 1e-9);
        EXPECT_NEAR(4 * pi * pi * real_period(pm), vol_h3(s), 1e-12);
    }
}

TEST(Periods, IdealVariantIsIsometryInvariant) {
    std::mt19937_64 rng(62);
    auto s = random_simplex(3, rng, 1, 0.7);
    auto L = random_isometry(3, rng, 0.4);
    std::vector<HPoint> moved;
    for (int k = 0; k < 4; ++k) moved.push_back(apply_isometry(L, s.vertex(k)));
    auto a = period_matrix_h3_ideal(s), b = period_matrix_h3_ideal(make_simplex(moved));
    EXPECT_LT((a.entries - b.entries).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Periods, GaugeMixingWithinAWeightIsInvisible) {
    std::mt19937_64 rng(63);
    std::uniform_int_distribution<int> q(-5, 5), den(1, 6);
    for (int i = 0; i < 20; ++i) {
        auto pm = period_matrix_h3(random_simplex(3, rng));
        auto mixed = pm;
        // add rational multiples of one weight-2 row to another
        for (int k = 0; k < 3; ++k) {
            int a = 1 + (k * 2) % 6, b = 1 + (k * 2 + 3) % 6;
            if (a <= b) std::swap(a, b);
            mixed.entries.row(a) += (double(q(rng)) / den(rng)) * mixed.entries.row(b);
        }
        EXPECT_TRUE(framed_equal(pm, mixed));
        auto other = period_matrix_h3(random_simplex(3, rng));
        EXPECT_FALSE(framed_equal(pm, other));
    }
}

TEST(Periods, GradedDimensionsMatchTheHyperplaneComplex) {
    for (int m : {1, 3, 5, 7}) {
        for (bool ideal : {false, true}) {
            if (m == 1 && ideal) continue;
            auto g = graded_dims(m, ideal);
            auto bf = oracle::graded_dims(m, ideal);
            for (auto [w, d] : g.dims) EXPECT_EQ(bf[w], d) << "m=" << m << " ideal=" << ideal << " weight " << w;
        }
    }
    EXPECT_EQ(graded_dims(3, false).dims, (std::vector<std::pair<int, int>>{{0, 1}, {2, 6}, {4, 1}}));
    EXPECT_EQ(graded_dims(3, true).dims, (std::vector<std::pair<int, int>>{{0, 1}, {2, 5}, {4, 1}}));
    EXPECT_THROW(graded_dims(4, false), std::invalid_argument);
}
