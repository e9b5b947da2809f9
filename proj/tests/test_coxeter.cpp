#include "scissors/coxeter.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numbers>

using namespace scissors;

namespace {

// diagram edges L6 - L1 - L2 - L3 - L4 - L5 ... L7 (0-based wall indices)
const std::map<std::pair<int, int>, int> kEdgesOfDiagram = {
    {{0, 5}, 5}, {{0, 1}, 3}, {{1, 2}, 3}, {{2, 3}, 3}, {{3, 4}, 4}};

}  // namespace

TEST(Coxeter, FormAndNormals) {
    auto p = bugaenko_polytope();
    ASSERT_EQ(p.walls.size(), 7u);
    const QuadElem phi = golden_ratio();
    auto G = gram_matrix(p);
    EXPECT_EQ(G[0][0], QuadElem(2));
    EXPECT_EQ(G[5][5] * QuadElem(p.sides[5] * p.sides[5]), G[5][5]);
    EXPECT_EQ(p.form(p.walls[0].normal, p.walls[5].normal), -phi);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) EXPECT_EQ(G[i][j], G[j][i]);
}

TEST(Coxeter, GramPatternMatchesTheDiagram) {
    auto gram = gram_report(bugaenko_polytope());
    ASSERT_EQ(gram.size(), 21u);
    const QuadElem phi = golden_ratio();
    for (const auto& e : gram) {
        if (e.i == 4 && e.j == 6) {
            EXPECT_EQ(e.kind, "ultraparallel");
            EXPECT_GT(e.value, 0);
            continue;
        }
        ASSERT_EQ(e.kind, "angle") << e.i << "," << e.j;
        ASSERT_TRUE(e.coxeter_order.has_value());
        auto it = kEdgesOfDiagram.find({e.i, e.j});
        int want = it == kEdgesOfDiagram.end() ? 2 : it->second;
        EXPECT_EQ(*e.coxeter_order, want) << e.i << "," << e.j;
        // cos^2(pi/k) lies in Q(sqrt 5) for every k here; cos itself does not for k = 4
        const std::map<int, QuadElem> cos2 = {{2, QuadElem(0)},
                                              {3, QuadElem(Rational(1, 4))},
                                              {4, QuadElem(Rational(1, 2))},
                                              {5, QuadElem(Rational(3, 8), Rational(1, 8), 5)}};
        EXPECT_EQ(e.cos_squared, cos2.at(want)) << e.i << "," << e.j;
        if (want != 4) ASSERT_TRUE(e.cos_exact.has_value());
        if (want == 2) EXPECT_TRUE(e.cos_exact->is_zero());
        EXPECT_NEAR(e.value, std::numbers::pi / want, 1e-12);
    }
    auto l1l6 = std::find_if(gram.begin(), gram.end(), [](const auto& e) { return e.i == 0 && e.j == 5; });
    EXPECT_EQ(*l1l6->cos_exact, phi / QuadElem(2));
}

TEST(Coxeter, VerticesFormASimplexPrism) {
    auto p = bugaenko_polytope();
    auto verts = polytope_vertices(p);
    // 4-simplex x interval: 5 + 5 vertices, each on exactly five walls
    EXPECT_EQ(verts.size(), 10u);
    std::vector<int> per_wall(7, 0);
    for (const auto& v : verts) {
        EXPECT_TRUE(v.interior);
        EXPECT_EQ(v.walls.size(), 5u);
        for (int w : v.walls) ++per_wall[w];
    }
    // the two caps hold 5 vertices, the five side walls hold 8
    std::sort(per_wall.begin(), per_wall.end());
    EXPECT_EQ(per_wall, (std::vector<int>{5, 5, 8, 8, 8, 8, 8}));
}

TEST(Coxeter, VolumeIsPositiveAndApexIndependent) {
    auto r = bugaenko_report(100000, 3, 2);
    ASSERT_TRUE(r.all_interior);
    ASSERT_EQ(r.volumes.size(), 2u);
    for (const auto& v : r.volumes) {
        EXPECT_GT(v.value, 0);
        for (const auto& piece : v.pieces) EXPECT_GT(piece.value, 0);
    }
    const auto& a = r.volumes[0];
    const auto& b = r.volumes[1];
    EXPECT_LT(std::fabs(a.value - b.value), 3 * std::hypot(a.err, b.err));
    EXPECT_EQ(r.d_L.value, BigInt(-400));
    // truncation of the Euler products
    const IntPoly fL{-1, 0, -1, 0, 1};
    double l_more = dedekind_euler(fL, 3, 40000).value / zeta_quad_series(5, 3, 1000000);
    EXPECT_NEAR(r.l_chi_3, l_more, 1e-7);
}
