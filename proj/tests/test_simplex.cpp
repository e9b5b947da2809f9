#include "scissors/simplex.hpp"
#include "scissors/volume.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace scissors;
using scissors::testing::random_simplex;

namespace {

long long choose(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(Simplex, FaceCounts) {
    std::mt19937_64 rng(20);
    for (int m = 1; m <= 5; ++m) {
        auto s = random_simplex(m, rng);
        for (int k = 0; k <= m; ++k) EXPECT_EQ(static_cast<long long>(faces(s, k).size()), choose(m + 1, k + 1));
    }
}

TEST(Simplex, OrientationFlipsUnderTransposition) {
    std::mt19937_64 rng(21);
    for (int m = 1; m <= 4; ++m) {
        auto s = random_simplex(m, rng);
        EXPECT_EQ(orientation(reversed(s)), -orientation(s));
    }
    EXPECT_TRUE(is_degenerate(make_simplex(std::vector<std::vector<double>>{{0, 0}, {0.1, 0.1}, {0.2, 0.2}})));
}

TEST(Simplex, IdealFlagFromUnitNorm) {
    auto s = make_simplex(std::vector<std::vector<double>>{{1, 0}, {0, 0.5}, {-0.6, -0.8}});
    EXPECT_EQ(s.num_ideal(), 2);
}

TEST(Simplex, ExactSubdivisionInH1IsAdditive) {
    // H^1 lengths are additive exactly when the pieces are exact rationals
    auto s = make_exact_simplex({{QuadElem(Rational(-1, 3))}, {QuadElem(Rational(4, 5))}});
    auto pieces = subdivide(s, std::vector<QuadElem>{QuadElem(Rational(1, 7))});
    ASSERT_EQ(pieces.size(), 2u);
    double sum = 0;
    for (const auto& p : pieces) sum += length_h1(p);
    EXPECT_NEAR(sum, length_h1(s), 1e-15);
}

TEST(Simplex, SubdivisionPreservesSignedArea) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int i = 0; i < 100; ++i) {
        auto s = random_simplex(2, rng);
        // random interior point by barycentric weights
        double w[3] = {u(rng), u(rng), u(rng)}, tot = w[0] + w[1] + w[2];
        std::vector<double> y(2, 0.0);
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 2; ++j) y[j] += w[k] / tot * s.y[k][j];
        double sum = 0;
        for (const auto& p : subdivide(s, klein_point(y))) sum += area_h2(p);
        EXPECT_NEAR(sum, area_h2(s), 1e-10);
    }
}

TEST(Simplex, TwistIsARightAction) {
    QuadElem r(0, Rational(1, 5), 5);  // sqrt(5)/5
    auto a = make_exact_simplex({{QuadElem(0), QuadElem(0)}, {r, QuadElem(0)}, {QuadElem(0), QuadElem(Rational(1, 3))}});
    auto b = make_exact_simplex({{QuadElem(Rational(1, 4)), QuadElem(0)}, {QuadElem(0), r}, {QuadElem(0), QuadElem(0)}});
    auto c = make_exact_simplex({{QuadElem(0), QuadElem(Rational(1, 2))}, {r, r}, {QuadElem(0), QuadElem(0)}});
    ProductSimplex p({a, b, c});
    p.places = {1, 2, 1};
    std::vector<int> s1{1, 2, 0}, s2{0, 2, 1};
    std::vector<int> comp(3);  // s2 o s1
    for (int i = 0; i < 3; ++i) comp[i] = s2[s1[i]];
    auto lhs = twist(s1, twist(s2, p));
    auto rhs = twist(comp, p);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(*lhs.factors[i].exact, *rhs.factors[i].exact);
    // conjugation is an involution, so swapping twice is the identity
    std::vector<int> swap01{1, 0, 2};
    auto back = twist(swap01, twist(swap01, p));
    for (int i = 0; i < 3; ++i) EXPECT_EQ(*back.factors[i].exact, *p.factors[i].exact);
}

TEST(Simplex, RegularIdealTetrahedronShape) {
    const double s = 1 / std::sqrt(3.0);
    auto t = make_simplex(std::vector<std::vector<double>>{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}});
    ASSERT_EQ(t.num_ideal(), 4);
    auto z = cross_ratio_parameter(t);
    EXPECT_NEAR(z.real(), 0.5, 1e-12);
    EXPECT_NEAR(z.imag(), std::sqrt(3.0) / 2, 1e-12);
}

TEST(Simplex, CanonicalShapeIsInTheFundamentalDomain) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0, 2);
    for (int i = 0; i < 500; ++i) {
        std::complex<double> z(g(rng), g(rng));
        if (std::fabs(z.imag()) < 1e-6) continue;
        auto w = canonical_shape(z);
        EXPECT_GT(w.imag(), 0);
        EXPECT_LE(w.real(), 0.5 + 1e-12);
        EXPECT_GE(std::abs(w - 1.0), 1 - 1e-12);
    }
}
