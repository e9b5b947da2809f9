#include "scissors/hypmodel.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace scissors;
using scissors::testing::random_klein_point;

TEST(HypModel, ConversionsRoundTrip) {
    std::mt19937_64 rng(10);
    for (int n : {1, 2, 3, 5}) {
        for (int i = 0; i < 50; ++i) {
            HPoint k = klein_point(random_klein_point(n, rng));
            for (Model m : {Model::Hyperboloid, Model::Ball, Model::UpperHalf}) {
                HPoint back = convert(convert(k, m), Model::Klein);
                for (int c = 0; c < n; ++c) EXPECT_NEAR(back.coords[c], k.coords[c], 1e-12);
                EXPECT_NO_THROW(validate(convert(k, m)));
            }
        }
    }
}

TEST(HypModel, BallIsHalfwayToKlein) {
    // Klein radius r corresponds to ball radius r / (1 + sqrt(1 - r^2))
    HPoint k = klein_point({0.6, 0});
    HPoint b = convert(k, Model::Ball);
    EXPECT_NEAR(b.coords[0], 0.6 / (1 + 0.8), 1e-15);
}

TEST(HypModel, DistanceFormulasAgree) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        HPoint p = klein_point(random_klein_point(3, rng));
        HPoint q = klein_point(random_klein_point(3, rng));
        EXPECT_NEAR(dist(p, q), dist_cross_ratio(p, q), 1e-9 * (1 + dist(p, q)));
    }
    // distance from the origin is artanh(r) in the Klein model
    EXPECT_NEAR(dist(klein_point({0, 0}), klein_point({0.5, 0})), std::atanh(0.5), 1e-14);
}

TEST(HypModel, DistanceIsIsometryInvariant) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        auto L = random_isometry(4, rng);
        HPoint p = klein_point(random_klein_point(4, rng, 0.7));
        HPoint q = klein_point(random_klein_point(4, rng, 0.7));
        EXPECT_NEAR(dist(apply_isometry(L, p), apply_isometry(L, q)), dist(p, q), 1e-8);
    }
}

TEST(HypModel, ValidationRejectsOutsidePoints) {
    EXPECT_THROW(validate(klein_point({0.8, 0.8})), std::invalid_argument);
    EXPECT_THROW(validate(klein_point({0.5, 0.5}, true)), std::invalid_argument);
    EXPECT_THROW(validate(HPoint{Model::UpperHalf, {0.1, -1.0}, false, false}), std::invalid_argument);
    EXPECT_THROW(dist(klein_point({1, 0}, true), klein_point({0, 0})), std::domain_error);
    EXPECT_THROW(parse_model("poincare-disc"), std::invalid_argument);
    EXPECT_EQ(parse_model("Klein"), Model::Klein);
}

namespace {

std::vector<QuadElem> v5(std::initializer_list<QuadElem> l) { return l; }

QuadraticForm bugaenko_form() {
    QuadraticForm q = QuadraticForm::standard(5);
    q.diag[0] = -golden_ratio();
    return q;
}

}  // namespace

TEST(HypModel, PentagonalAngleIsExact) {
    // normals (0,-1,1,0,0,0) and (phi-1, phi, 0,0,0,0) under -phi x0^2 + sum x_i^2
    QuadraticForm q = bugaenko_form();
    QuadElem phi = golden_ratio(), z(0), one(1);
    Hyperplane h1(v5({z, -one, one, z, z, z}), q);
    Hyperplane h6(v5({phi - one, phi, z, z, z, z}), q);
    auto d = dihedral_angle(h1, h6);
    ASSERT_TRUE(std::holds_alternative<Angle>(d.kind));
    ASSERT_TRUE(d.cos_exact.has_value());
    EXPECT_EQ(*d.cos_exact, phi / QuadElem(2));
    EXPECT_NEAR(std::get<Angle>(d.kind).theta, std::numbers::pi / 5, 1e-14);
}

TEST(HypModel, DihedralClassification) {
    QuadraticForm q = QuadraticForm::standard(2);
    QuadElem z(0), one(1);
    // x = 0 and y = 0 through the origin: right angle
    auto right = dihedral_angle(Hyperplane({z, one, z}, q), Hyperplane({z, z, one}, q));
    EXPECT_NEAR(std::get<Angle>(right.kind).theta, std::numbers::pi / 2, 1e-15);
    // x = 1/2 vs x = -1/2 in the Klein disc never meet
    auto ultra = dihedral_angle(Hyperplane({Rational(-1, 2), one, z}, q), Hyperplane({Rational(-1, 2), -one, z}, q));
    EXPECT_TRUE(std::holds_alternative<Ultraparallel>(ultra.kind));
    // y2 = 0 and y1 + y2 = 1 meet at the ideal point (1, 0)
    auto par = dihedral_angle(Hyperplane({z, z, one}, q), Hyperplane({one, one, one}, q));
    EXPECT_TRUE(std::holds_alternative<Parallel>(par.kind));
}

TEST(HypModel, DihedralAngleInvariantUnderPositiveScaling) {
    QuadraticForm q = bugaenko_form();
    QuadElem phi = golden_ratio(), z(0), one(1);
    std::vector<QuadElem> a{z, -one, one, z, z, z}, b{phi - one, phi, z, z, z, z};
    auto base = dihedral_angle(Hyperplane(a, q), Hyperplane(b, q));
    for (QuadElem c : {QuadElem(3), phi, phi * phi + one, QuadElem(Rational(2, 7))}) {
        auto sb = b;
        for (auto& x : sb) x *= c;
        auto d = dihedral_angle(Hyperplane(a, q), Hyperplane(sb, q));
        EXPECT_EQ(d.cos_squared, base.cos_squared);
        EXPECT_EQ(*d.cos_exact, *base.cos_exact);
    }
}

TEST(HypModel, RationalPoints) {
    // 1 - (3/5)^2 = (4/5)^2
    EXPECT_TRUE(is_rational_point({QuadElem(Rational(3, 5)), QuadElem(0)}));
    EXPECT_FALSE(is_rational_point({QuadElem(Rational(1, 2)), QuadElem(0)}));
    EXPECT_FALSE(is_rational_point({QuadElem(1), QuadElem(0)}));
}
