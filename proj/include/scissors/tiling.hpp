#pragma once

// Excision of overlapping product polytopes into interior-disjoint convex cells, fan
// triangulation into product simplices, and a local-ball check of tiling properness.

#include "scissors/simplex.hpp"
#include "scissors/volume.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace scissors {

/// Chart of a factor: Euclidean space, or the Klein model of H^n (geodesically convex sets
/// are Euclidean convex sets there, so the same polytope code serves both).
enum class Space { Euclidean, Hyperbolic };

struct HalfSpace {
    Eigen::VectorXd a;  // a . x <= b
    double b;
};

struct ConvexPolytope {
    Space space = Space::Hyperbolic;
    int dim = 0;
    std::vector<HalfSpace> h;
    std::vector<Eigen::VectorXd> v;

    bool contains(const Eigen::VectorXd& x, double tol = 1e-10) const {
        for (const auto& hs : h)
            if (hs.a.dot(x) > hs.b + tol) return false;
        return true;
    }
    bool empty() const { return v.size() < static_cast<std::size_t>(dim) + 1; }
};

using ProductPolytope = std::vector<ConvexPolytope>;

inline constexpr double kTilingTol = 1e-10;

namespace detail {

inline int affine_rank(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& idx, int dim) {
    if (idx.empty()) return -1;
    Eigen::MatrixXd M(dim, idx.size() > 0 ? static_cast<int>(idx.size()) - 1 : 0);
    for (std::size_t i = 1; i < idx.size(); ++i) M.col(static_cast<int>(i) - 1) = pts[idx[i]] - pts[idx[0]];
    if (M.cols() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
}

inline void choose(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// vertices by brute force over n-subsets of constraints, then drop constraints that do not
// support a facet
inline void finalize(ConvexPolytope& p) {
    const int n = p.dim;
    p.v.clear();
    if (n == 0) return;
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    choose(static_cast<int>(p.h.size()), n, 0, cur, subsets);
    for (const auto& s : subsets) {
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            A.row(i) = p.h[s[i]].a.transpose();
            b(i) = p.h[s[i]].b;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() < n) continue;
        Eigen::VectorXd x = lu.solve(b);
        if (!p.contains(x, 1e-9)) continue;
        bool dup = false;
        for (const auto& w : p.v) dup = dup || (w - x).norm() < 1e-9;
        if (!dup) p.v.push_back(x);
    }
    std::sort(p.v.begin(), p.v.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    });
    std::vector<int> all(p.v.size());
    std::iota(all.begin(), all.end(), 0);
    if (p.v.size() < static_cast<std::size_t>(n) + 1 || affine_rank(p.v, all, n) < n) {
        p.v.clear();
        return;
    }
    std::vector<HalfSpace> kept;
    for (const auto& hs : p.h) {
        std::vector<int> on;
        for (int i = 0; i < static_cast<int>(p.v.size()); ++i)
            if (std::fabs(hs.a.dot(p.v[i]) - hs.b) < 1e-9) on.push_back(i);
        if (static_cast<int>(on.size()) < n || affine_rank(p.v, on, n) < n - 1) continue;
        bool dup = false;
        for (const auto& k : kept) {
            // same supporting hyperplane (constraints are normalized)
            dup = dup || ((k.a - hs.a).norm() < 1e-9 && std::fabs(k.b - hs.b) < 1e-9);
        }
        if (!dup) kept.push_back(hs);
    }
    p.h = std::move(kept);
}

inline HalfSpace normalized(Eigen::VectorXd a, double b) {
    double s = a.norm();
    return {a / s, b / s};
}

}  // namespace detail

inline ConvexPolytope polytope_from_halfspaces(Space space, int dim, std::vector<HalfSpace> h) {
    ConvexPolytope p{space, dim, {}, {}};
    for (auto& hs : h) p.h.push_back(detail::normalized(hs.a, hs.b));
    detail::finalize(p);
    return p;
}

/// Axis-parallel box [lo, hi] (Euclidean or Klein chart).
inline ConvexPolytope box_polytope(Space space, const std::vector<double>& lo, const std::vector<double>& hi) {
    const int n = static_cast<int>(lo.size());
    std::vector<HalfSpace> h;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = 1;
        h.push_back({e, hi[i]});
        h.push_back({-e, -lo[i]});
    }
    return polytope_from_halfspaces(space, n, h);
}

/// Convex hull of m+1 affinely independent points in R^m.
inline ConvexPolytope simplex_polytope(Space space, const std::vector<std::vector<double>>& rows) {
    const int m = static_cast<int>(rows.size()) - 1;
    if (m < 1 || static_cast<int>(rows[0].size()) != m) throw std::invalid_argument("need a full-dimensional simplex");
    std::vector<Eigen::VectorXd> pts;
    for (const auto& r : rows) pts.push_back(Eigen::Map<const Eigen::VectorXd>(r.data(), m));
    std::vector<HalfSpace> h;
    for (int i = 0; i <= m; ++i) {
        // hyperplane through all vertices but i
        std::vector<int> others;
        for (int j = 0; j <= m; ++j)
            if (j != i) others.push_back(j);
        Eigen::MatrixXd D(m - 1 > 0 ? m - 1 : 0, m);
        for (int k = 1; k < m; ++k) D.row(k - 1) = (pts[others[k]] - pts[others[0]]).transpose();
        Eigen::VectorXd a;
        if (m == 1) {
            a = Eigen::VectorXd::Ones(1);
        } else {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
            Eigen::MatrixXd K = lu.kernel();
            if (K.cols() != 1) throw std::invalid_argument("degenerate simplex");
            a = K.col(0);
        }
        double b = a.dot(pts[others[0]]);
        if (a.dot(pts[i]) > b) {
            a = -a;
            b = -b;
        }
        h.push_back({a, b});
    }
    return polytope_from_halfspaces(space, m, h);
}

inline ConvexPolytope simplex_polytope(const Simplex& s, Space space = Space::Hyperbolic) {
    return simplex_polytope(space, s.y);
}

inline ConvexPolytope intersect(const ConvexPolytope& x, const ConvexPolytope& y) {
    if (x.dim != y.dim || x.space != y.space) throw std::invalid_argument("intersect: mismatched ambient spaces");
    std::vector<HalfSpace> h = x.h;
    h.insert(h.end(), y.h.begin(), y.h.end());
    return polytope_from_halfspaces(x.space, x.dim, h);
}

/// Closure of X \ Y as interior-disjoint convex pieces: X, constraints 1..j-1 of Y kept,
/// constraint j reversed.
inline std::vector<ConvexPolytope> difference(const ConvexPolytope& x, const ConvexPolytope& y) {
    std::vector<ConvexPolytope> out;
    std::vector<HalfSpace> acc = x.h;
    for (const auto& hs : y.h) {
        std::vector<HalfSpace> h = acc;
        h.push_back({-hs.a, -hs.b});
        auto piece = polytope_from_halfspaces(x.space, x.dim, h);
        if (!piece.empty()) out.push_back(std::move(piece));
        acc.push_back(hs);
    }
    return out;
}

namespace detail {

inline void fan(const ConvexPolytope& p, const std::vector<int>& face, int dim, std::vector<std::vector<int>>& out) {
    if (dim == 0) {
        out.push_back({face[0]});
        return;
    }
    const int a = face[0];  // vertices are sorted, so this is the lexicographically least
    std::set<std::vector<int>> seen;
    for (const auto& hs : p.h) {
        std::vector<int> sub;
        for (int v : face)
            if (std::fabs(hs.a.dot(p.v[v]) - hs.b) < 1e-9) sub.push_back(v);
        if (sub.empty() || sub.size() == face.size() || std::find(sub.begin(), sub.end(), a) != sub.end()) continue;
        if (affine_rank(p.v, sub, p.dim) != dim - 1) continue;
        if (!seen.insert(sub).second) continue;
        std::vector<std::vector<int>> lower;
        fan(p, sub, dim - 1, lower);
        for (auto& s : lower) {
            s.insert(s.begin(), a);
            out.push_back(std::move(s));
        }
    }
}

}  // namespace detail

/// Fan triangulation from the lexicographically least vertex, recursively over facets.
inline std::vector<Simplex> triangulate(const ConvexPolytope& p) {
    std::vector<Simplex> out;
    if (p.empty()) return out;
    std::vector<int> all(p.v.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> idx;
    detail::fan(p, all, p.dim, idx);
    for (const auto& s : idx) {
        std::vector<std::vector<double>> rows;
        for (int v : s) rows.emplace_back(p.v[v].data(), p.v[v].data() + p.dim);
        out.push_back(make_simplex(rows));
    }
    return out;
}

/// Unsigned volume of a simplex in the given chart.
inline double chart_volume(const Simplex& s, Space space, long long samples = 1 << 18) {
    if (space == Space::Hyperbolic) return std::fabs(volume(s, samples));
    const int m = s.dim();
    Eigen::MatrixXd E(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) E(i, j) = s.y[i + 1][j] - s.y[0][j];
    double f = 1;
    for (int k = 2; k <= m; ++k) f *= k;
    return std::fabs(E.determinant()) / f;
}

inline double polytope_volume(const ConvexPolytope& p) {
    double v = 0;
    for (const auto& s : triangulate(p)) v += chart_volume(s, p.space);
    return v;
}

inline double product_volume(const ProductPolytope& p) {
    double v = 1;
    for (const auto& f : p) v *= polytope_volume(f);
    return v;
}

inline double product_volume(const ProductSimplex& p, Space space = Space::Hyperbolic) {
    double v = 1;
    for (const auto& f : p.factors) v *= chart_volume(f, space);
    return v;
}

namespace detail {

// all products choosing one cell per factor
inline void expand(const std::vector<std::vector<ConvexPolytope>>& choices, std::size_t k, ProductPolytope& cur,
                   std::vector<ProductPolytope>& out) {
    if (k == choices.size()) {
        out.push_back(cur);
        return;
    }
    for (const auto& c : choices[k]) {
        cur.push_back(c);
        expand(choices, k + 1, cur, out);
        cur.pop_back();
    }
}

inline void check_compatible(const ProductPolytope& a, const ProductPolytope& b) {
    if (a.size() != b.size()) throw std::invalid_argument("products with different numbers of factors");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].dim != b[i].dim || a[i].space != b[i].space)
            throw std::invalid_argument("factor ambient spaces differ");
}

}  // namespace detail

/// P \ Q for products: the 2^n - 1 terms with at least one factor taken from X_i \ Y_i and the
/// rest from X_i cap Y_i. Returns {P} when the interiors do not meet.
inline std::vector<ProductPolytope> product_difference(const ProductPolytope& p, const ProductPolytope& q) {
    detail::check_compatible(p, q);
    const std::size_t n = p.size();
    std::vector<ConvexPolytope> inter;
    for (std::size_t i = 0; i < n; ++i) {
        inter.push_back(intersect(p[i], q[i]));
        if (inter.back().empty()) return {p};
    }
    std::vector<std::vector<ConvexPolytope>> diff;
    for (std::size_t i = 0; i < n; ++i) diff.push_back(difference(p[i], q[i]));
    std::vector<ProductPolytope> out;
    for (unsigned eps = 1; eps < (1u << n); ++eps) {
        std::vector<std::vector<ConvexPolytope>> choices;
        bool empty = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (eps & (1u << i)) {
                if (diff[i].empty()) empty = true;
                choices.push_back(diff[i]);
            } else {
                choices.push_back({inter[i]});
            }
        }
        if (empty) continue;
        ProductPolytope cur;
        detail::expand(choices, 0, cur, out);
    }
    return out;
}

/// Excision of two overlapping products: (P cap Q), the P-only and the Q-only terms, as
/// interior-disjoint convex product cells whose union is P cup Q.
inline std::vector<ProductPolytope> excise_pair(const ProductPolytope& p, const ProductPolytope& q) {
    detail::check_compatible(p, q);
    for (const auto& f : p)
        if (f.empty()) throw std::invalid_argument("excise_pair: empty or unbounded factor");
    for (const auto& f : q)
        if (f.empty()) throw std::invalid_argument("excise_pair: empty or unbounded factor");
    ProductPolytope inter;
    for (std::size_t i = 0; i < p.size(); ++i) {
        inter.push_back(intersect(p[i], q[i]));
        if (inter.back().empty()) return {p, q};
    }
    std::vector<ProductPolytope> out{inter};
    for (auto& c : product_difference(p, q)) out.push_back(std::move(c));
    for (auto& c : product_difference(q, p)) out.push_back(std::move(c));
    return out;
}

inline ProductPolytope product_polytope(const ProductSimplex& p, Space space = Space::Hyperbolic) {
    ProductPolytope out;
    for (const auto& f : p.factors) {
        // cusps would need horospherical truncation first
        if (space == Space::Hyperbolic && f.num_ideal() > 0)
            throw std::invalid_argument("tiles with ideal vertices are not supported");
        out.push_back(simplex_polytope(f, space));
    }
    return out;
}

/// Fan-triangulates every factor and returns all product simplices.
inline std::vector<ProductSimplex> triangulate(const ProductPolytope& p, const std::vector<int>& places = {}) {
    std::vector<std::vector<Simplex>> per;
    for (const auto& f : p) per.push_back(triangulate(f));
    std::vector<ProductSimplex> out;
    std::vector<Simplex> cur;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == per.size()) {
            ProductSimplex ps;
            ps.factors = cur;
            if (!places.empty()) ps.places = places;
            else
                for (std::size_t i = 0; i < cur.size(); ++i) ps.places.push_back(i % 2 == 0 ? 1 : 2);
            out.push_back(std::move(ps));
            return;
        }
        for (const auto& s : per[k]) {
            cur.push_back(s);
            self(self, k + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

struct ExcisionResult {
    std::vector<ProductSimplex> tiles;
    std::vector<ProductPolytope> cells;  // convex cells before triangulation
    std::vector<std::pair<int, int>> overlaps;  // input tiles whose interiors meet
    int rounds = 0;
    int round_bound = 0;
};

/// Adds the tiles one by one, keeping only the part not already covered (set-union
/// semantics: repeated tiles collapse), then triangulates the convex cells.
inline ExcisionResult excise_all(const std::vector<ProductSimplex>& tiles, Space space = Space::Hyperbolic) {
    ExcisionResult res;
    res.round_bound = static_cast<int>(tiles.size());
    std::vector<ProductPolytope> input;
    for (const auto& t : tiles) input.push_back(product_polytope(t, space));
    for (std::size_t i = 0; i < input.size(); ++i)
        for (std::size_t j = i + 1; j < input.size(); ++j) {
            bool meet = true;
            for (std::size_t k = 0; k < input[i].size() && meet; ++k) meet = !intersect(input[i][k], input[j][k]).empty();
            if (meet) res.overlaps.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    for (const auto& start : input) {
        ++res.rounds;
        if (res.rounds > res.round_bound) throw std::logic_error("excise_all exceeded its round bound");
        std::vector<ProductPolytope> rest{start};
        for (const auto& c : res.cells) {
            std::vector<ProductPolytope> next;
            for (const auto& r : rest)
                for (auto& piece : product_difference(r, c)) next.push_back(std::move(piece));
            rest = std::move(next);
            if (rest.empty()) break;
        }
        for (auto& r : rest) res.cells.push_back(std::move(r));
    }
    std::vector<int> places;
    if (!tiles.empty()) places = tiles[0].places;
    for (const auto& c : res.cells)
        for (auto& s : triangulate(c, places)) res.tiles.push_back(std::move(s));
    return res;
}

// ---------------------------------------------------------------------------------------
// Properness

/// Barycentric membership of x in the (full-dimensional) simplex s.
inline bool simplex_contains(const Simplex& s, const Eigen::VectorXd& x, double tol = 1e-12) {
    const int m = s.dim();
    Eigen::MatrixXd A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(j, i) = s.y[i + 1][j] - s.y[0][j];
    Eigen::VectorXd rhs(m);
    for (int j = 0; j < m; ++j) rhs(j) = x(j) - s.y[0][j];
    Eigen::VectorXd lam = A.fullPivLu().solve(rhs);
    double l0 = 1 - lam.sum();
    if (l0 < -tol) return false;
    for (int i = 0; i < m; ++i)
        if (lam(i) < -tol) return false;
    return true;
}

inline bool product_contains(const ProductSimplex& p, const std::vector<Eigen::VectorXd>& x, double tol = 1e-12) {
    for (std::size_t i = 0; i < p.factors.size(); ++i)
        if (!simplex_contains(p.factors[i], x[i], tol)) return false;
    return true;
}

/// [tile, facet, tile, facet]; facet f of a product simplex numbers the factor facets
/// consecutively (factor 0 opposite vertex 0, 1, ...; then factor 1, ...). A partner tile of
/// -1 marks a facet declared interior whose neighbour is absent.
using Gluing = std::array<int, 4>;

struct FacetReport {
    int tile, facet;
    bool interior;
    double coverage;   // mean local multiplicity at the probe points
    double deviation;  // max |multiplicity - 1| over probe points (interior facets)
};

struct PropernessReport {
    std::vector<FacetReport> facets;
    double max_deviation = 0;
    int interior_facets = 0;
    int boundary_facets = 0;
};

namespace detail {

inline std::pair<int, int> facet_location(const ProductSimplex& p, int facet) {
    int f = facet;
    for (int k = 0; k < static_cast<int>(p.factors.size()); ++k) {
        int cnt = p.factors[k].dim() + 1;
        if (f < cnt) return {k, f};
        f -= cnt;
    }
    throw std::invalid_argument("facet index out of range");
}

inline Eigen::VectorXd barycentric_point(const Simplex& s, const std::vector<double>& w) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(s.ambient_dim());
    for (int i = 0; i <= s.dim(); ++i)
        for (int j = 0; j < s.ambient_dim(); ++j) x(j) += w[i] * s.y[i][j];
    return x;
}

template <class Rng>
std::vector<double> random_weights(int count, Rng& rng, double floor_w) {
    // Dirichlet(1,..,1) mixed with the barycentre to stay away from lower faces
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(count);
    double s = 0;
    for (auto& x : w) s += (x = ex(rng));
    for (auto& x : w) x = (1 - floor_w * count) * x / s + floor_w;
    return w;
}

}  // namespace detail

/// Pairs of facets that coincide as point sets (same facet vertices, same other factors).
inline std::vector<Gluing> infer_gluing(const std::vector<ProductSimplex>& tiles, double tol = 1e-9) {
    auto same_rows = [&](std::vector<std::vector<double>> a, std::vector<std::vector<double>> b) {
        if (a.size() != b.size()) return false;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a[i].size(); ++j)
                if (std::fabs(a[i][j] - b[i][j]) > tol) return false;
        return true;
    };
    auto facet_rows = [](const Simplex& s, int omit) {
        std::vector<std::vector<double>> r;
        for (int i = 0; i <= s.dim(); ++i)
            if (i != omit) r.push_back(s.y[i]);
        return r;
    };
    std::vector<Gluing> out;
    for (int a = 0; a < static_cast<int>(tiles.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(tiles.size()); ++b) {
            const auto& A = tiles[a];
            const auto& B = tiles[b];
            if (A.factors.size() != B.factors.size()) continue;
            int offa = 0;
            for (std::size_t k = 0; k < A.factors.size(); ++k) {
                bool others = true;
                for (std::size_t j = 0; j < A.factors.size() && others; ++j)
                    if (j != k) others = same_rows(A.factors[j].y, B.factors[j].y);
                int offb = 0;
                for (std::size_t j = 0; j < k; ++j) offb += B.factors[j].dim() + 1;
                if (others)
                    for (int fa = 0; fa <= A.factors[k].dim(); ++fa)
                        for (int fb = 0; fb <= B.factors[k].dim(); ++fb)
                            if (same_rows(facet_rows(A.factors[k], fa), facet_rows(B.factors[k], fb)))
                                out.push_back({a, offa + fa, b, offb + fb});
                offa += A.factors[k].dim() + 1;
            }
        }
    return out;
}

/// For every facet of every tile, samples probe points in the facet's relative interior and
/// counts the tiles covering random points of a small ball around each (total local samples
/// `probe_points`). A facet is interior if the gluing lists it or another tile lies on its
/// far side; there the multiplicity should be 1.
inline PropernessReport check_proper(const std::vector<ProductSimplex>& tiles, const std::vector<Gluing>& gluing,
                                     long long probe_points, std::uint64_t seed, double radius = 1e-5) {
    PropernessReport rep;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::set<std::pair<int, int>> declared;
    for (const auto& g : gluing) {
        declared.insert({g[0], g[1]});
        if (g[2] >= 0) declared.insert({g[2], g[3]});
    }
    long long total_facets = 0;
    for (const auto& t : tiles)
        for (const auto& f : t.factors) total_facets += f.dim() + 1;
    if (total_facets == 0) return rep;
    const int probes_per_facet = 4;
    const long long local = std::max<long long>(16, probe_points / (total_facets * probes_per_facet));

    for (int ti = 0; ti < static_cast<int>(tiles.size()); ++ti) {
        const auto& t = tiles[ti];
        int nf = 0;
        for (const auto& f : t.factors) nf += f.dim() + 1;
        for (int facet = 0; facet < nf; ++facet) {
            auto [k, omit] = detail::facet_location(t, facet);
            FacetReport fr{ti, facet, false, 0.0, 0.0};
            const bool glued = declared.count({ti, facet}) > 0;
            double cov_sum = 0;
            int interior_probes = 0;
            for (int pr = 0; pr < probes_per_facet; ++pr) {
                std::vector<Eigen::VectorXd> x;
                for (int j = 0; j < static_cast<int>(t.factors.size()); ++j) {
                    const auto& s = t.factors[j];
                    auto w = detail::random_weights(s.dim() + 1, rng, 0.05);
                    if (j == k) {
                        w[omit] = 0;
                        double tot = std::accumulate(w.begin(), w.end(), 0.0);
                        for (auto& c : w) c /= tot;
                    }
                    x.push_back(detail::barycentric_point(s, w));
                }
                // a probe is interior when the facet is glued or another tile lies just beyond
                // it there; a facet may be only partly shared (brick-wall tilings)
                bool beyond = false;
                {
                    auto y = x;
                    Eigen::VectorXd dir = y[k] - Eigen::Map<const Eigen::VectorXd>(t.factors[k].y[omit].data(),
                                                                                    t.factors[k].ambient_dim());
                    y[k] += 10 * radius * dir.normalized();
                    for (int o = 0; o < static_cast<int>(tiles.size()) && !beyond; ++o)
                        beyond = o != ti && product_contains(tiles[o], y, 0.0);
                }
                long long hits = 0;
                for (long long l = 0; l < local; ++l) {
                    auto y = x;
                    // uniform point in the product-space ball of the given radius
                    int total_dim = 0;
                    for (const auto& v : y) total_dim += static_cast<int>(v.size());
                    Eigen::VectorXd g(total_dim);
                    for (int i = 0; i < total_dim; ++i) g(i) = gauss(rng);
                    g *= radius * std::pow(unif(rng), 1.0 / total_dim) / g.norm();
                    int off = 0;
                    for (auto& v : y) {
                        v += g.segment(off, v.size());
                        off += static_cast<int>(v.size());
                    }
                    for (const auto& o : tiles)
                        if (product_contains(o, y, 0.0)) ++hits;
                }
                double mult = static_cast<double>(hits) / static_cast<double>(local);
                cov_sum += mult;
                if (glued || beyond) {
                    ++interior_probes;
                    fr.deviation = std::max(fr.deviation, std::fabs(mult - 1));
                }
            }
            fr.coverage = cov_sum / probes_per_facet;
            fr.interior = interior_probes > 0;
            if (fr.interior) {
                ++rep.interior_facets;
                rep.max_deviation = std::max(rep.max_deviation, fr.deviation);
            } else {
                ++rep.boundary_facets;
            }
            rep.facets.push_back(fr);
        }
    }
    return rep;
}

}  // namespace scissors
