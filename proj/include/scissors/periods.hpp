#pragma once

// Framed period matrices of simplex motives in H^1, H^2 and H^3, the coproduct of the H^3
// matrix as a sum of Kummer (x) angle pairs, and the graded dimensions of h(Delta).

#include "scissors/linalg.hpp"
#include "scissors/scissors.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace scissors {

using cplx = std::complex<double>;
inline const cplx kTwoPiI(0.0, 2 * std::numbers::pi);

/// Lower-triangular period matrix; row i carries weight weights[i]. frame_top is the row of
/// the volume class, frame_bottom the column of the class [Delta].
struct PeriodMatrix {
    Eigen::MatrixXcd entries;
    std::vector<int> weights;
    int frame_top = 0;
    int frame_bottom = 0;
    std::vector<double> cusp_angles;  // ideal-vertex variant: the three angles at infinity

    int size() const { return static_cast<int>(entries.rows()); }
};

namespace detail {

inline bool close_points(const std::optional<cplx>& a, const std::optional<cplx>& b) {
    if (!a || !b) return !a && !b;
    return std::abs(*a - *b) < 1e-14;
}

inline void require_distinct(const std::vector<std::optional<cplx>>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (close_points(pts[i], pts[j])) throw std::invalid_argument("coincident points");
}

}  // namespace detail

/// [x1 x0 | q0 q1] = (x1-q0)(x0-q1) / ((x0-q0)(x1-q1)); nullopt stands for infinity.
inline cplx kummer_cross_ratio(std::optional<cplx> x0, std::optional<cplx> x1, std::optional<cplx> q0,
                               std::optional<cplx> q1) {
    // cross_ratio(z0,z1,z2,z3) = (z3-z0)(z1-z2)/((z3-z2)(z1-z0)); with (q1, x0, q0, x1):
    // (x1-q1)(x0-q0)/((x1-q0)(x0-q1)), the inverse of the bracket.
    return 1.0 / cross_ratio({q1, x0, q0, x1});
}

/// Kummer motive of the segment [x0, x1] with boundary points q0, q1:
/// rows (1, 0; 2l, 2i pi), l = 1/2 log [x1 x0 | q0 q1] on the principal branch.
inline PeriodMatrix period_matrix_h1(std::optional<cplx> x0, std::optional<cplx> x1, std::optional<cplx> q0,
                                     std::optional<cplx> q1) {
    detail::require_distinct({x0, x1, q0, q1});
    cplx l = 0.5 * std::log(kummer_cross_ratio(x0, x1, q0, q1));
    PeriodMatrix pm;
    pm.entries = Eigen::MatrixXcd::Zero(2, 2);
    pm.entries(0, 0) = 1;
    pm.entries(1, 0) = 2.0 * l;
    pm.entries(1, 1) = kTwoPiI;
    pm.weights = {0, 2};
    pm.frame_top = 1;
    return pm;
}

inline PeriodMatrix period_matrix_h1(double x0, double x1, double q0, double q1) {
    return period_matrix_h1(cplx(x0), cplx(x1), cplx(q0), cplx(q1));
}

/// Half-periods of the triangle with ideal vertex x and finite side on the geodesic (p, s),
/// cut out by the geodesics from x to q and r.
struct IdealTrianglePeriods {
    double l0;  // finite side length
    double lx;  // regularized difference of the two infinite sides
    double t1, t2;
};

inline IdealTrianglePeriods ideal_triangle_periods(std::optional<double> p, std::optional<double> q,
                                                   std::optional<double> r, std::optional<double> s,
                                                   std::optional<double> x) {
    auto c = [](std::optional<double> v) -> std::optional<cplx> {
        if (!v) return std::nullopt;
        return cplx(*v);
    };
    detail::require_distinct({c(p), c(q), c(r), c(s), c(x)});
    // Moebius normalization p, s, x -> 0, 1, inf
    double t1 = cross_ratio({c(p), c(s), c(x), c(q)}).real();
    double t2 = cross_ratio({c(p), c(s), c(x), c(r)}).real();
    IdealTrianglePeriods out;
    out.t1 = t1;
    out.t2 = t2;
    out.lx = 0.5 * std::log((t2 * (1 - t2)) / (t1 * (1 - t1)));
    out.l0 = 0.5 * std::log((t2 * (1 - t1)) / (t1 * (1 - t2)));
    return out;
}

/// Rows (1; 2 l0, 2i pi; 2 lx, 0, 2i pi).
inline PeriodMatrix period_matrix_h2_ideal(std::optional<double> p, std::optional<double> q,
                                           std::optional<double> r, std::optional<double> s,
                                           std::optional<double> x) {
    auto h = ideal_triangle_periods(p, q, r, s, x);
    PeriodMatrix pm;
    pm.entries = Eigen::MatrixXcd::Zero(3, 3);
    pm.entries(0, 0) = 1;
    pm.entries(1, 0) = 2 * h.l0;
    pm.entries(2, 0) = 2 * h.lx;
    pm.entries(1, 1) = kTwoPiI;
    pm.entries(2, 2) = kTwoPiI;
    pm.weights = {0, 2, 2};
    return pm;
}

/// Difference of the lengths of the two vertical sides (over t1 and t2, both ending on the
/// unit-diameter semicircle over [0,1]) truncated at height R, by direct quadrature of ds = dy/y.
inline double truncated_length_difference(double t1, double t2, double R) {
    auto side = [R](double t) {
        double h = std::sqrt(t * (1 - t));
        auto ds = [](double y) { return 1.0 / y; };
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(ds, h, R, 20, 1e-14);
    };
    return side(t1) - side(t2);
}

namespace detail {

inline void fill_weight_two_rows(PeriodMatrix& pm, const std::vector<double>& two_l) {
    for (std::size_t k = 0; k < two_l.size(); ++k) {
        pm.entries(k + 1, 0) = two_l[k];
        pm.entries(k + 1, k + 1) = kTwoPiI;
    }
}

}  // namespace detail

/// 8x8 period matrix of a finite tetrahedron: rows 1; 2 l_ij (i<j, kEdges order);
/// i vol, 2 pi theta_ij, (2 i pi)^2.
inline PeriodMatrix period_matrix_h3(const Simplex& s) {
    if (s.dim() != 3 || s.ambient_dim() != 3) throw std::invalid_argument("need a tetrahedron in H^3");
    if (s.num_ideal() > 0) throw std::invalid_argument("ideal vertex: use period_matrix_h3_ideal");
    auto l = edge_lengths(s);
    auto th = dihedral_angles(s);
    double vol = vol_h3(s);
    PeriodMatrix pm;
    pm.entries = Eigen::MatrixXcd::Zero(8, 8);
    pm.entries(0, 0) = 1;
    std::vector<double> two_l;
    for (double v : l) two_l.push_back(2 * v);
    detail::fill_weight_two_rows(pm, two_l);
    pm.entries(7, 0) = cplx(0, vol);
    for (int e = 0; e < 6; ++e) pm.entries(7, e + 1) = 2 * kPi * th[e];
    pm.entries(7, 7) = kTwoPiI * kTwoPiI;
    pm.weights = {0, 2, 2, 2, 2, 2, 2, 4};
    pm.frame_top = 7;
    pm.frame_bottom = 0;
    return pm;
}

/// Busemann-regularized length of the edge from the ideal vertex (null vector v) to X;
/// differences do not depend on the horosphere.
inline double busemann_length(const Eigen::VectorXd& v, const Eigen::VectorXd& X) {
    return std::log(-minkowski(v, X));
}

/// 7x7 variant for one ideal vertex x: rows 1; 2 l for the three finite edges; the two
/// classes 2(l~_a - l~_c), 2(l~_b - l~_c) of the edges through x; i vol, 2 pi theta (finite
/// edges), 2 pi theta_a, 2 pi theta_b, (2 i pi)^2. The third cusp angle theta_c is kept in
/// cusp_angles, where theta_a + theta_b + theta_c = pi.
inline PeriodMatrix period_matrix_h3_ideal(const Simplex& s) {
    if (s.dim() != 3 || s.ambient_dim() != 3) throw std::invalid_argument("need a tetrahedron in H^3");
    if (s.num_ideal() != 1) throw std::invalid_argument("need exactly one ideal vertex");
    int x = static_cast<int>(std::find(s.ideal.begin(), s.ideal.end(), true) - s.ideal.begin());
    std::vector<int> fin;
    for (int i = 0; i < 4; ++i)
        if (i != x) fin.push_back(i);
    auto th = dihedral_angles(s);
    auto edge_index = [](int i, int j) {
        if (i > j) std::swap(i, j);
        for (int e = 0; e < 6; ++e)
            if (kEdges[e][0] == i && kEdges[e][1] == j) return e;
        return -1;
    };
    Eigen::VectorXd v = hyperboloid_vector(s.vertex(x));
    std::array<double, 3> lt{}, cusp{};
    for (int k = 0; k < 3; ++k) {
        lt[k] = busemann_length(v, hyperboloid_vector(s.vertex(fin[k])));
        cusp[k] = th[edge_index(x, fin[k])];
    }
    std::array<std::array<int, 2>, 3> finite_edges{{{fin[0], fin[1]}, {fin[0], fin[2]}, {fin[1], fin[2]}}};
    PeriodMatrix pm;
    pm.entries = Eigen::MatrixXcd::Zero(7, 7);
    pm.entries(0, 0) = 1;
    std::vector<double> two_l;
    for (auto [i, j] : finite_edges) two_l.push_back(2 * dist(s.vertex(i), s.vertex(j)));
    two_l.push_back(2 * (lt[0] - lt[2]));
    two_l.push_back(2 * (lt[1] - lt[2]));
    detail::fill_weight_two_rows(pm, two_l);
    pm.entries(6, 0) = cplx(0, vol_h3(s));
    for (int k = 0; k < 3; ++k) pm.entries(6, k + 1) = 2 * kPi * th[edge_index(finite_edges[k][0], finite_edges[k][1])];
    pm.entries(6, 4) = 2 * kPi * cusp[0];
    pm.entries(6, 5) = 2 * kPi * cusp[1];
    pm.entries(6, 6) = kTwoPiI * kTwoPiI;
    pm.weights = {0, 2, 2, 2, 2, 2, 4};
    pm.frame_top = 6;
    pm.cusp_angles = {cusp[0], cusp[1], cusp[2]};
    return pm;
}

/// Real period of the framed class for weight 2n = weights[frame_top]:
/// R = -Im(alpha / (2 i pi)^n). The sign makes positively oriented tetrahedra give R > 0, so
/// that vol = (2 pi)^2 R in H^3.
inline double real_period(const PeriodMatrix& pm) {
    int n = pm.weights[pm.frame_top] / 2;
    cplx alpha = pm.entries(pm.frame_top, pm.frame_bottom);
    cplx r = alpha / std::pow(kTwoPiI, n);
    return -r.imag();
}

struct CoproductPair {
    Eigen::Matrix2cd kummer;  // [[1,0],[2l, 2i pi]]
    Eigen::Matrix2cd angle;   // [[1,0],[i theta, 2i pi]]
    double length;
    double theta;
};

/// Reduced coproduct of the 8x8 matrix: one Kummer (x) angle pair per edge.
inline std::vector<CoproductPair> coproduct_h3(const PeriodMatrix& pm) {
    if (pm.size() != 8) throw std::invalid_argument("coproduct_h3 needs the 8x8 matrix");
    std::vector<CoproductPair> out;
    if (std::abs(pm.entries(7, 0)) == 0.0) {
        // degenerate simplex: zero volume and no framing
        bool all_zero = true;
        for (int e = 1; e <= 6; ++e) all_zero = all_zero && std::abs(pm.entries(e, 0)) == 0.0;
        if (all_zero) return out;
    }
    for (int e = 1; e <= 6; ++e) {
        CoproductPair p;
        p.length = pm.entries(e, 0).real() / 2;
        p.theta = pm.entries(7, e).real() / (2 * kPi);
        p.kummer << 1, 0, 2 * p.length, kTwoPiI;
        p.angle << 1, 0, cplx(0, p.theta), kTwoPiI;
        out.push_back(p);
    }
    return out;
}

/// Undo rational mixing inside each weight block: an off-diagonal entry q (2 i pi)^k between
/// rows of equal weight 2k is recognized as rational and cleared by a row operation.
inline PeriodMatrix gauge_normalize(const PeriodMatrix& pm, std::int64_t max_den = 10000, double tol = 1e-9) {
    PeriodMatrix out = pm;
    const int N = out.size();
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < i; ++j) {
            if (out.weights[i] != out.weights[j]) continue;
            cplx diag = std::pow(kTwoPiI, out.weights[j] / 2);
            cplx q = out.entries(i, j) / diag;
            if (std::abs(q) < tol) continue;
            if (std::fabs(q.imag()) > tol) continue;
            auto r = recognize_rational(q.real(), max_den, tol);
            if (!r) continue;
            out.entries.row(i) -= to_double(*r) * out.entries.row(j);
        }
    }
    return out;
}

/// Equality of framed classes: equal real period and equal normalized matrices.
inline bool framed_equal(const PeriodMatrix& a, const PeriodMatrix& b, double tol = 1e-8) {
    if (a.size() != b.size() || a.weights != b.weights) return false;
    if (std::fabs(real_period(a) - real_period(b)) > tol) return false;
    auto na = gauge_normalize(a), nb = gauge_normalize(b);
    return (na.entries - nb.entries).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------------------
// Graded dimensions

struct GradedDims {
    std::vector<std::pair<int, int>> dims;  // (weight, dimension), increasing weight
    friend bool operator==(const GradedDims&, const GradedDims&) = default;
};

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// gr^W of h(Delta) for an m-simplex, m = 2n-1: weight 2(n-r) has dimension C(m+1, 2r);
/// with one ideal vertex the weight-2 piece loses one dimension.
inline GradedDims graded_dims(int m, bool ideal_vertex) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("graded_dims: m must be odd (no non-trivial framing otherwise)");
    int n = (m + 1) / 2;
    GradedDims g;
    g.dims.push_back({0, 1});
    for (int w = 1; w < n; ++w) {
        int r = n - w;
        long long d = binomial(m + 1, 2 * r);
        if (ideal_vertex && w == 1) d -= 1;
        g.dims.push_back({2 * w, static_cast<int>(d)});
    }
    if (n >= 1 && m > 1) g.dims.push_back({2 * n, 1});
    if (m == 1) g.dims.push_back({2, ideal_vertex ? 0 : 1});
    return g;
}

}  // namespace scissors
