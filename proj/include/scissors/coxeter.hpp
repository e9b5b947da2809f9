#pragma once

// Bugaenko's reflection polytope in H^5 over Q(sqrt 5): exact walls and Gram matrix, vertex
// enumeration, fan triangulation and the numeric volume compared with L(chi, 3).

#include "scissors/lfunc.hpp"
#include "scissors/linalg.hpp"
#include "scissors/volume.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scissors {

struct CoxeterPolytope {
    QuadraticForm form;
    std::vector<Hyperplane> walls;
    // inside: sides[i] * (normal_i, x)_q <= 0 on the future sheet
    std::vector<int> sides;
};

/// The form -phi x0^2 + x1^2 + ... + x5^2 and the seven walls L1..L7 with the printed
/// coefficient vectors as q-normals.
inline CoxeterPolytope bugaenko_polytope() {
    const QuadElem phi = golden_ratio();
    const QuadElem z(0), one(1);
    CoxeterPolytope p{QuadraticForm{{-phi, one, one, one, one, one}}, {}, {}};
    std::vector<std::vector<QuadElem>> normals = {
        {z, -one, one, z, z, z},
        {z, z, -one, one, z, z},
        {z, z, z, -one, one, z},
        {z, z, z, z, -one, one},
        {z, z, z, z, z, one},
        {phi - one, phi, z, z, z, z},
        {one + phi, phi, phi, phi, phi, phi},
    };
    for (auto& n : normals) p.walls.emplace_back(n, p.form);
    // orient the walls so that the off-diagonal Gram entries are <= 0 (propagated along the
    // graph of non-orthogonal pairs); the global sign is fixed by requiring vertices
    const int k = static_cast<int>(p.walls.size());
    p.sides.assign(k, 0);
    for (int start = 0; start < k; ++start) {
        if (p.sides[start]) continue;
        p.sides[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                int s = p.form(p.walls[i].normal, p.walls[j].normal).sign(1);
                if (s == 0) continue;
                int want = -s * p.sides[i];
                if (p.sides[j] == 0) {
                    p.sides[j] = want;
                    stack.push_back(j);
                }
            }
        }
    }
    return p;
}

inline Matrix<QuadElem> gram_matrix(const CoxeterPolytope& p) {
    const int k = static_cast<int>(p.walls.size());
    Matrix<QuadElem> G(k, std::vector<QuadElem>(k, QuadElem(0)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            G[i][j] = p.form(p.walls[i].normal, p.walls[j].normal) * QuadElem(p.sides[i] * p.sides[j]);
    return G;
}

struct GramEntry {
    int i, j;
    QuadElem product;                 // oriented (e_i, e_j)
    std::string kind;                 // "angle", "parallel" or "ultraparallel"
    QuadElem cos_squared;
    std::optional<QuadElem> cos_exact;
    std::optional<int> coxeter_order; // k with angle pi/k, identified exactly
    double value = 0;                 // angle, or distance for ultraparallel walls
};

namespace detail {

// cos^2(pi/k) for k = 2..6, all in Q(sqrt 5)
inline std::optional<int> coxeter_order_of(const QuadElem& c2, const QuadElem& cos_signed) {
    if (cos_signed.sign(1) < 0) return std::nullopt;
    const std::vector<std::pair<int, QuadElem>> table = {
        {2, QuadElem(0)},
        {3, QuadElem(Rational(1, 4))},
        {4, QuadElem(Rational(1, 2))},
        {5, QuadElem(Rational(3, 8), Rational(1, 8), 5)},
        {6, QuadElem(Rational(3, 4))},
    };
    for (const auto& [k, v] : table) {
        if (c2.d() != 1 && c2.d() != 5 && !v.is_rational()) continue;
        if (c2 == v) return k;
    }
    return std::nullopt;
}

}  // namespace detail

/// Classification of all pairs of walls (i < j), with oriented normals.
inline std::vector<GramEntry> gram_report(const CoxeterPolytope& p) {
    std::vector<GramEntry> out;
    const int k = static_cast<int>(p.walls.size());
    auto G = gram_matrix(p);
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            std::vector<QuadElem> ni = p.walls[i].normal, nj = p.walls[j].normal;
            for (auto& c : ni) c *= QuadElem(p.sides[i]);
            for (auto& c : nj) c *= QuadElem(p.sides[j]);
            Dihedral dh = dihedral_angle(Hyperplane(ni, p.form), Hyperplane(nj, p.form));
            GramEntry e{i, j, G[i][j], "", dh.cos_squared, dh.cos_exact, std::nullopt, 0.0};
            // orthogonal walls of unequal norm: cos is 0 even though the normalization is irrational
            if (!e.cos_exact && dh.cos_squared.is_zero()) e.cos_exact = QuadElem(0);
            if (std::holds_alternative<Angle>(dh.kind)) {
                e.kind = "angle";
                e.value = std::get<Angle>(dh.kind).theta;
                // the sign of cos is that of -(e_i, e_j)
                e.coxeter_order = detail::coxeter_order_of(dh.cos_squared, -G[i][j]);
            } else if (std::holds_alternative<Parallel>(dh.kind)) {
                e.kind = "parallel";
            } else {
                e.kind = "ultraparallel";
                e.value = std::get<Ultraparallel>(dh.kind).distance;
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

struct PolytopeVertex {
    std::vector<QuadElem> x;   // homogeneous, x0 = 1
    std::vector<int> walls;    // walls through the vertex
    bool interior = false;     // q(x) < 0 exactly
    std::vector<double> klein(const QuadraticForm& q) const {
        // y_i = x_i / (sqrt(-q_00) x_0) at place 1
        double s = std::sqrt(-q.diag[0].embed(1));
        std::vector<double> y;
        for (std::size_t i = 1; i < x.size(); ++i) y.push_back(x[i].embed(1) / s);
        return y;
    }
};

namespace detail {

inline void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline QuadElem oriented_product(const CoxeterPolytope& p, int i, const std::vector<QuadElem>& x) {
    return p.form(p.walls[i].normal, x) * QuadElem(p.sides[i]);
}

}  // namespace detail

/// Vertices: every n-subset of walls is solved exactly; a solution is kept when it lies in
/// the closed time-like cone and satisfies all wall inequalities. Vertices at or beyond the
/// absolute are kept with interior = false so callers can see them.
inline std::vector<PolytopeVertex> polytope_vertices(const CoxeterPolytope& p) {
    const int n = p.form.dim();
    const int k = static_cast<int>(p.walls.size());
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    detail::combinations(k, n, 0, cur, subsets);
    std::vector<PolytopeVertex> out;
    for (const auto& sub : subsets) {
        Matrix<QuadElem> A;
        for (int i : sub) {
            std::vector<QuadElem> row;
            for (int c = 0; c <= n; ++c) row.push_back(p.form.diag[c] * p.walls[i].normal[c]);
            A.push_back(std::move(row));
        }
        auto ker = kernel(A, n + 1);
        if (ker.size() != 1) continue;
        auto x = ker[0];
        if (x[0].is_zero()) continue;
        QuadElem inv = x[0].inverse();
        for (auto& c : x) c *= inv;
        QuadElem qx = p.form(x, x);
        if (qx.sign(1) > 0) continue;
        bool inside = true;
        for (int i = 0; i < k && inside; ++i) inside = detail::oriented_product(p, i, x).sign(1) <= 0;
        if (!inside) continue;
        bool dup = false;
        for (const auto& v : out) dup = dup || v.x == x;
        if (dup) continue;
        PolytopeVertex v{x, {}, qx.sign(1) < 0};
        for (int i = 0; i < k; ++i)
            if (detail::oriented_product(p, i, x).is_zero()) v.walls.push_back(i);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const PolytopeVertex& a, const PolytopeVertex& b) {
        for (std::size_t i = 0; i < a.x.size(); ++i) {
            double da = a.x[i].embed(1), db = b.x[i].embed(1);
            if (da != db) return da < db;
        }
        return false;
    });
    return out;
}

namespace detail {

inline int affine_rank(const std::vector<PolytopeVertex>& verts, const std::vector<int>& idx) {
    Matrix<QuadElem> M;
    for (int i : idx) M.push_back(verts[i].x);
    return rank(M) - 1;
}

// Fan triangulation of the face spanned by `face` (vertex indices, dimension dim): cone from
// its first vertex (or `apex` at the top level) over the triangulated facets missing it.
inline void fan_triangulate(const CoxeterPolytope& p, const std::vector<PolytopeVertex>& verts,
                            const std::vector<int>& face, int dim, int apex,
                            std::vector<std::vector<int>>& out) {
    if (dim == 0) {
        out.push_back({face[0]});
        return;
    }
    int a = apex >= 0 ? apex : face[0];
    std::set<std::vector<int>> seen;
    for (int w = 0; w < static_cast<int>(p.walls.size()); ++w) {
        std::vector<int> sub;
        for (int v : face)
            if (std::find(verts[v].walls.begin(), verts[v].walls.end(), w) != verts[v].walls.end())
                sub.push_back(v);
        if (sub.empty() || std::find(sub.begin(), sub.end(), a) != sub.end()) continue;
        if (sub.size() == face.size()) continue;
        if (affine_rank(verts, sub) != dim - 1) continue;
        if (!seen.insert(sub).second) continue;
        std::vector<std::vector<int>> lower;
        fan_triangulate(p, verts, sub, dim - 1, -1, lower);
        for (auto& s : lower) {
            s.insert(s.begin(), a);
            out.push_back(std::move(s));
        }
    }
}

}  // namespace detail

/// Simplices (as vertex index lists) of the fan triangulation from vertex `apex`.
inline std::vector<std::vector<int>> triangulate(const CoxeterPolytope& p, const std::vector<PolytopeVertex>& verts,
                                                 int apex = 0) {
    std::vector<int> all(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<std::vector<int>> out;
    detail::fan_triangulate(p, verts, all, p.form.dim(), apex, out);
    return out;
}

struct PolytopeVolume {
    double value = 0;
    double err = 0;
    std::vector<NumericVolume> pieces;
    int apex = 0;
};

/// Sum of the QMC volumes of the fan triangulation from `apex`; `samples` per piece.
inline PolytopeVolume polytope_volume(const CoxeterPolytope& p, const std::vector<PolytopeVertex>& verts,
                                      long long samples, std::uint64_t seed, int apex = 0) {
    PolytopeVolume out;
    out.apex = apex;
    auto simplices = triangulate(p, verts, apex);
    double var = 0;
    std::uint64_t piece_seed = seed;
    for (const auto& s : simplices) {
        std::vector<std::vector<double>> rows;
        for (int v : s) rows.push_back(verts[v].klein(p.form));
        auto nv = vol_numeric(make_simplex(rows), samples, piece_seed++);
        nv.value = std::fabs(nv.value);
        out.value += nv.value;
        var += nv.err * nv.err;
        out.pieces.push_back(nv);
    }
    out.err = std::sqrt(var);
    return out;
}

struct BugaenkoReport {
    CoxeterPolytope polytope;
    std::vector<GramEntry> gram;
    std::vector<PolytopeVertex> vertices;
    bool all_interior = false;
    bool simple = false;                // every vertex on exactly n walls
    std::vector<PolytopeVolume> volumes;  // one per apex tried
    double l_chi_3 = 0;
    double sqrt_disc = 0;               // sqrt|d_{L/k} d_k|
    FieldDiscriminant d_L;
    double ratio = 0;                   // value pi^3 / (sqrt_disc L(chi,3))
    double ratio_err = 0;
    std::optional<Rational> recognized;
};

/// End-to-end run. Volumes are computed from the first `apex_count` vertices as apexes.
inline BugaenkoReport bugaenko_report(long long samples, std::uint64_t seed, int apex_count = 2,
                                      std::int64_t p_max = 10000) {
    BugaenkoReport r;
    r.polytope = bugaenko_polytope();
    r.gram = gram_report(r.polytope);
    r.vertices = polytope_vertices(r.polytope);
    r.all_interior = !r.vertices.empty();
    r.simple = !r.vertices.empty();
    for (const auto& v : r.vertices) {
        r.all_interior = r.all_interior && v.interior;
        r.simple = r.simple && static_cast<int>(v.walls.size()) == r.polytope.form.dim();
    }
    if (!r.all_interior) return r;
    for (int a = 0; a < std::min<int>(apex_count, static_cast<int>(r.vertices.size())); ++a)
        r.volumes.push_back(polytope_volume(r.polytope, r.vertices, samples, seed, a));

    // L = k(sqrt phi) = Q[x]/(x^4 - x^2 - 1), k = Q(sqrt 5)
    const IntPoly fL{-1, 0, -1, 0, 1};
    r.l_chi_3 = dedekind_euler(fL, 3, p_max).value / zeta_quad_series(5, 3, 1000000);
    r.d_L = field_discriminant(fL);
    r.sqrt_disc = std::sqrt(std::fabs(r.d_L.value.convert_to<double>()) / 5.0);
    if (!r.volumes.empty()) {
        const double pi3 = std::pow(std::numbers::pi, 3);
        r.ratio = r.volumes[0].value * pi3 / (r.sqrt_disc * r.l_chi_3);
        r.ratio_err = r.volumes[0].err * pi3 / (r.sqrt_disc * r.l_chi_3);
        r.recognized = recognize_rational(r.ratio, 100000, 10 * r.ratio_err);
    }
    return r;
}

}  // namespace scissors
