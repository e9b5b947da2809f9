#pragma once

// Volumes of hyperbolic simplices: exact-formula engines in H^1, H^2, H^3, a randomized
// quasi-Monte Carlo integrator for any dimension, and the pi-power classes of spheres and
// orthogonal groups.

#include "scissors/dilog.hpp"
#include "scissors/simplex.hpp"

#include <Eigen/Dense>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace scissors {

constexpr double kPi = std::numbers::pi;

/// coeff * pi^pi_exp with an exact rational coefficient.
struct PiPowerClass {
    Rational coeff{0};
    int pi_exp = 0;

    double value() const { return to_double(coeff) * std::pow(kPi, pi_exp); }
    friend bool operator==(const PiPowerClass&, const PiPowerClass&) = default;
};

inline BigInt factorial(int n) {
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// vol(S^n): 2 pi^m/(m-1)! for n = 2m-1, 2^{2m+1} m! pi^m/(2m)! for n = 2m.
inline PiPowerClass vol_sphere(int n) {
    if (n <= 0) throw std::invalid_argument("vol_sphere needs n >= 1");
    if (n % 2 == 1) {
        int m = (n + 1) / 2;
        return {make_rational(2, factorial(m - 1)), m};
    }
    int m = n / 2;
    BigInt num = BigInt(1) << (2 * m + 1);
    return {make_rational(num * factorial(m), factorial(2 * m)), m};
}

/// vol(O(n)) = vol(O(n-1)) vol(S^{n-1}), vol(O(1)) = 2 (two points).
inline PiPowerClass vol_orthogonal(int n) {
    if (n <= 0) throw std::invalid_argument("vol_orthogonal needs n >= 1");
    PiPowerClass v{Rational(2), 0};
    for (int k = 1; k < n; ++k) {
        PiPowerClass s = vol_sphere(k);
        v.coeff *= s.coeff;
        v.pi_exp += s.pi_exp;
    }
    return v;
}

inline int vol_orthogonal_class(int n) { return vol_orthogonal(n).pi_exp; }

// ---------------------------------------------------------------------------------------
// H^1 and H^2

/// Signed length artanh(b) - artanh(a) of a Klein segment [a, b].
inline double length_h1(const Simplex& s) {
    if (s.dim() != 1 || s.ambient_dim() != 1) throw std::invalid_argument("length_h1 needs a segment in H^1");
    if (s.ideal[0] || s.ideal[1]) throw std::domain_error("infinite length");
    return std::atanh(s.y[1][0]) - std::atanh(s.y[0][0]);
}

namespace detail {

// Angle at vertex v between the geodesics to u and w (u, w may be ideal).
inline double vertex_angle(const Eigen::VectorXd& v, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    Eigen::VectorXd tu = u + minkowski(u, v) * v;
    Eigen::VectorXd tw = w + minkowski(w, v) * v;
    double uu = minkowski(tu, tu), ww = minkowski(tw, tw), uw = minkowski(tu, tw);
    if (uu <= 0 || ww <= 0) return 0.0;
    double c = uw / std::sqrt(uu * ww);
    double s = std::sqrt(std::max(0.0, uu * ww - uw * uw)) / std::sqrt(uu * ww);
    return std::atan2(s, c);
}

}  // namespace detail

/// Interior angles of a triangle in H^2; ideal vertices get angle 0.
inline std::array<double, 3> triangle_angles(const Simplex& s) {
    if (s.dim() != 2 || s.ambient_dim() != 2) throw std::invalid_argument("need a triangle in H^2");
    std::array<Eigen::VectorXd, 3> X;
    for (int i = 0; i < 3; ++i) X[i] = hyperboloid_vector(s.vertex(i));
    std::array<double, 3> a{};
    for (int i = 0; i < 3; ++i)
        a[i] = s.ideal[i] ? 0.0 : detail::vertex_angle(X[i], X[(i + 1) % 3], X[(i + 2) % 3]);
    return a;
}

/// Signed area pi - alpha - beta - gamma times the orientation.
inline double area_h2(const Simplex& s) {
    int o = orientation(s);
    if (o == 0) return 0.0;
    auto a = triangle_angles(s);
    return o * (kPi - a[0] - a[1] - a[2]);
}

/// Poincare's alternating face sum in dimension 2, with the sign as printed in the source
/// formula: alpha + beta + gamma - pi = -area for positively oriented triangles.
inline double poincare_formula_h2(const Simplex& s) {
    auto a = triangle_angles(s);
    return a[0] + a[1] + a[2] - kPi;
}

/// Exact angle defect for angles given as rational multiples of pi.
inline PiPowerClass angle_defect(const std::vector<Rational>& angles_over_pi) {
    Rational r = static_cast<int>(angles_over_pi.size()) - 2;
    for (const auto& a : angles_over_pi) r -= a;
    return {r, r == 0 ? 0 : 1};
}

/// Positively oriented finite triangle with the prescribed angles (sum < pi), vertex 0 at the
/// origin and vertex 1 on the positive x-axis.
inline Simplex triangle_from_angles(double alpha, double beta, double gamma) {
    if (alpha + beta + gamma >= kPi) throw std::invalid_argument("angle sum must be < pi");
    double cosh_c = (std::cos(gamma) + std::cos(alpha) * std::cos(beta)) / (std::sin(alpha) * std::sin(beta));
    double cosh_b = (std::cos(beta) + std::cos(alpha) * std::cos(gamma)) / (std::sin(alpha) * std::sin(gamma));
    double tc = std::sqrt(1 - 1 / (cosh_c * cosh_c));  // tanh(c)
    double tb = std::sqrt(1 - 1 / (cosh_b * cosh_b));
    return make_simplex(std::vector<std::vector<double>>{
        {0.0, 0.0}, {tc, 0.0}, {tb * std::cos(alpha), tb * std::sin(alpha)}});
}

// ---------------------------------------------------------------------------------------
// H^3

namespace detail {

// Volume of the region above the unit hemisphere over the right triangle with vertices
// 0 (the hemisphere center), f (foot, right angle) and u, where |f| = cos(alpha) and delta
// is the angle at 0.
inline double right_cone_volume(double alpha, double delta) {
    return 0.25 * (lobachevsky(alpha + delta) - lobachevsky(alpha - delta) + 2 * lobachevsky(kPi / 2 - delta));
}

// Unsigned volume of the cone from the ideal point p (unit vector) over the finite triangle
// with Klein vertices a, b, c.
inline double ideal_cone_volume(const Eigen::Vector3d& p, const std::array<Eigen::Vector3d, 3>& tri) {
    // Orthogonal map R with R p = e3 (Householder reflection).
    Eigen::Vector3d e3(0, 0, 1);
    Eigen::Vector3d w = p - e3;
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    if (w.norm() > 1e-15) R -= 2 * w * w.transpose() / w.squaredNorm();
    std::array<Eigen::Vector2d, 3> u;
    std::array<double, 3> t;
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d y = R * tri[k];
        HPoint h = convert(klein_point({y(0), y(1), y(2)}), Model::UpperHalf);
        u[k] = Eigen::Vector2d(h.coords[0], h.coords[1]);
        t[k] = h.coords[2];
    }
    // Hemisphere |x - c|^2 + t^2 = R^2 through the three points: 2 u.c + K = |u|^2 + t^2.
    Eigen::Matrix3d A;
    Eigen::Vector3d rhs;
    for (int k = 0; k < 3; ++k) {
        A(k, 0) = 2 * u[k](0);
        A(k, 1) = 2 * u[k](1);
        A(k, 2) = 1;
        rhs(k) = u[k].squaredNorm() + t[k] * t[k];
    }
    double scale = (u[1] - u[0]).norm() * (u[2] - u[0]).norm();
    double area2 = (u[1] - u[0])(0) * (u[2] - u[0])(1) - (u[1] - u[0])(1) * (u[2] - u[0])(0);
    if (std::fabs(area2) <= 1e-14 * std::max(scale, 1e-300)) return 0.0;  // vertical plane
    Eigen::Vector3d sol = A.fullPivLu().solve(rhs);
    Eigen::Vector2d c(sol(0), sol(1));
    double R2 = sol(2) + c.squaredNorm();
    double Rad = std::sqrt(R2);
    double total = 0;
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector2d a = (u[k] - c) / Rad, b = (u[(k + 1) % 3] - c) / Rad;
        Eigen::Vector2d e = b - a;
        double el = e.squaredNorm();
        if (el == 0) continue;
        Eigen::Vector2d f = a + e * (-a.dot(e) / el);  // foot of the perpendicular from 0
        double fn = f.norm();
        if (fn < 1e-15) continue;  // edge line through the center: zero signed area
        double alpha = std::acos(std::min(1.0, fn));
        for (auto [v, sgn] : {std::pair{b, 1.0}, std::pair{a, -1.0}}) {
            Eigen::Vector2d fv = v - f;
            double cr = f(0) * v(1) - f(1) * v(0);  // orientation of (0, f, v)
            if (fv.norm() < 1e-300 || cr == 0) continue;
            double delta = std::atan2(fv.norm(), fn);
            total += sgn * (cr > 0 ? 1.0 : -1.0) * right_cone_volume(alpha, delta);
        }
    }
    return std::fabs(total);
}

inline Eigen::Vector3d vec3(const std::vector<double>& v) { return Eigen::Vector3d(v[0], v[1], v[2]); }

inline double homogeneous_det(const std::array<Eigen::Vector3d, 4>& v) {
    Eigen::Matrix4d M;
    for (int i = 0; i < 4; ++i) {
        M(i, 0) = 1;
        M.block<1, 3>(i, 1) = v[i].transpose();
    }
    return M.determinant();
}

// Candidate cone points on the sphere: axis, face-diagonal and cube-diagonal directions.
inline const std::vector<Eigen::Vector3d>& cone_candidates() {
    static const std::vector<Eigen::Vector3d> c = [] {
        std::vector<Eigen::Vector3d> out;
        for (int x = -1; x <= 1; ++x)
            for (int y = -1; y <= 1; ++y)
                for (int z = -1; z <= 1; ++z) {
                    if (x == 0 && y == 0 && z == 0) continue;
                    // a slight skew keeps candidates away from symmetric configurations
                    Eigen::Vector3d v(x + 0.1234 * y, y + 0.0567 * z, z + 0.0891 * x);
                    out.push_back(v.normalized());
                }
        return out;
    }();
    return c;
}

}  // namespace detail

/// Signed volume of a tetrahedron in H^3 with at most one ideal vertex or four ideal vertices.
/// All-ideal: D(shape). Otherwise the simplex is written as a signed sum of cones from an ideal
/// point p over its faces, each cone evaluated in closed form with Lobachevsky functions.
inline double vol_h3(const Simplex& s) {
    if (s.dim() != 3 || s.ambient_dim() != 3) throw std::invalid_argument("vol_h3 needs a tetrahedron in H^3");
    int o = orientation(s);
    if (o == 0) return 0.0;
    int ni = s.num_ideal();
    if (ni == 4) return o * bloch_wigner(cross_ratio_parameter(s));
    if (ni > 1) throw std::invalid_argument("vol_h3 supports at most one ideal vertex or an ideal tetrahedron");
    std::array<Eigen::Vector3d, 4> v;
    for (int i = 0; i < 4; ++i) v[i] = detail::vec3(s.y[i]);
    auto face = [&](int i) {
        std::array<Eigen::Vector3d, 3> f;
        for (int k = 0, j = 0; k < 4; ++k)
            if (k != i) f[j++] = v[k];
        return f;
    };
    if (ni == 1) {
        int j = static_cast<int>(std::find(s.ideal.begin(), s.ideal.end(), true) - s.ideal.begin());
        return o * detail::ideal_cone_volume(v[j].normalized(), face(j));
    }
    Eigen::Vector3d best_p;
    double best = -1;
    for (const auto& p : detail::cone_candidates()) {
        double worst = 1e300;
        for (int i = 0; i < 4; ++i) {
            auto w = v;
            w[i] = p;
            worst = std::min(worst, std::fabs(detail::homogeneous_det(w)));
        }
        if (worst > best) {
            best = worst;
            best_p = p;
        }
    }
    double total = 0;
    for (int i = 0; i < 4; ++i) {
        auto w = v;
        w[i] = best_p;
        double det = detail::homogeneous_det(w);
        if (det == 0) continue;
        total += (det > 0 ? 1.0 : -1.0) * detail::ideal_cone_volume(best_p, face(i));
    }
    return total;
}

// ---------------------------------------------------------------------------------------
// Numeric integration of the Klein volume density (1 - |y|^2)^{-(m+1)/2}

struct NumericVolume {
    double value = 0;
    double err = 0;
};

namespace detail {

// Integral over the simplex with vertices V (rows; finite except possibly row 0, which may
// lie on the sphere) using the collapsed-coordinate (Duffy) map from [0,1]^m; the radial
// coordinate is squared when row 0 is ideal so the integrand stays bounded.
struct SimplexIntegrand {
    Eigen::MatrixXd V;
    bool apex_ideal = false;
    double jac0 = 0;  // |det| of the edge matrix

    SimplexIntegrand(Eigen::MatrixXd verts, bool ideal0) : V(std::move(verts)), apex_ideal(ideal0) {
        const int m = static_cast<int>(V.rows()) - 1;
        Eigen::MatrixXd E(m, V.cols());
        for (int i = 0; i < m; ++i) E.row(i) = V.row(i + 1) - V.row(0);
        jac0 = std::fabs(E.determinant());
    }

    double operator()(const double* u) const {
        const int m = static_cast<int>(V.rows()) - 1;
        const double expo = -(m + 1) / 2.0;
        // x = v0 + t1 (d1 + t2 (d2 + ...)), d_k = v_k - v_{k-1}
        double r = apex_ideal ? u[0] * u[0] : u[0];
        Eigen::VectorXd inner = Eigen::VectorXd::Zero(V.cols());
        double jac = jac0;
        for (int k = m; k >= 1; --k) {
            double tk = (k == 1) ? r : u[k - 1];
            inner = tk * (V.row(k) - V.row(k - 1)).transpose() + tk * inner;
            if (k >= 2) jac *= std::pow(u[k - 1], m - k);
        }
        Eigen::VectorXd x = V.row(0).transpose() + inner;
        if (!apex_ideal) {
            double g = 1 - x.squaredNorm();
            if (g <= 0) return 0.0;
            return jac * std::pow(r, m - 1) * std::pow(g, expo);
        }
        // 1 - |x|^2 = r g with x = v0 + r q: g = -2 v0.q - r |q|^2
        Eigen::VectorXd q = inner / r;
        if (r == 0) {
            // limit direction: recompute q at r -> 0 from the collapsed coordinates
            Eigen::VectorXd in2 = Eigen::VectorXd::Zero(V.cols());
            for (int k = m; k >= 1; --k) {
                double tk = (k == 1) ? 1.0 : u[k - 1];
                in2 = tk * (V.row(k) - V.row(k - 1)).transpose() + tk * in2;
            }
            q = in2;
        }
        double g = -2 * V.row(0).dot(q) - r * q.squaredNorm();
        if (g <= 0) return 0.0;
        // dr = 2 v dv, r^{m-1} r^{expo} = v^{2(m-1) + 2 expo} = v^{m-3}
        return 2 * jac * std::pow(u[0], m - 2) * std::pow(g, expo);
    }
};

inline void barycentric_pieces(const Eigen::MatrixXd& V, const std::vector<bool>& ideal,
                               std::vector<std::pair<Eigen::MatrixXd, bool>>& out) {
    const int m = static_cast<int>(V.rows()) - 1;
    std::vector<int> perm(m + 1);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Eigen::MatrixXd P(m + 1, V.cols());
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(V.cols());
        for (int k = 0; k <= m; ++k) {
            acc += V.row(perm[k]);
            P.row(k) = acc / (k + 1);
        }
        if (ideal[perm[0]]) P.row(0).normalize();
        out.emplace_back(std::move(P), ideal[perm[0]]);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/// Randomized QMC estimate of the signed volume. Sobol points with `shifts` independent
/// Cranley-Patterson rotations drawn from mt19937_64(seed); err is the standard error over
/// the rotations. Simplices with several ideal vertices are split barycentrically so every
/// piece carries at most one ideal vertex, which is then integrated in squared radial
/// coordinates.
inline NumericVolume vol_numeric(const Simplex& s, long long samples, std::uint64_t seed, int shifts = 16) {
    const int m = s.dim();
    const int n = s.ambient_dim();
    if (m != n) throw std::invalid_argument("vol_numeric needs a full-dimensional simplex");
    if (samples < 1000) throw std::invalid_argument("vol_numeric needs at least 1000 samples");
    int o = orientation(s);
    if (o == 0) return {0.0, 0.0};
    Eigen::MatrixXd V(m + 1, n);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j < n; ++j) V(i, j) = s.y[i][j];

    std::vector<std::pair<Eigen::MatrixXd, bool>> pieces;
    int ni = s.num_ideal();
    if (ni == 0) {
        pieces.emplace_back(V, false);
    } else if (ni == 1) {
        int j = static_cast<int>(std::find(s.ideal.begin(), s.ideal.end(), true) - s.ideal.begin());
        Eigen::MatrixXd W = V;
        W.row(0) = V.row(j).normalized();
        W.row(j) = V.row(0);
        pieces.emplace_back(W, true);
    } else {
        detail::barycentric_pieces(V, s.ideal, pieces);
    }
    std::vector<detail::SimplexIntegrand> integrands;
    for (auto& [P, id] : pieces) integrands.emplace_back(P, id);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long long per_shift = std::max<long long>(1, samples / shifts);
    std::vector<double> estimates;
    std::vector<double> u(m);
    const double scale = std::ldexp(1.0, -64);
    for (int r = 0; r < shifts; ++r) {
        std::vector<double> shift(m);
        for (auto& x : shift) x = unif(rng);
        boost::random::sobol qrng(m);
        double sum = 0;
        for (long long k = 0; k < per_shift; ++k) {
            for (int d = 0; d < m; ++d) {
                double x = static_cast<double>(qrng()) * scale + shift[d];
                u[d] = x - std::floor(x);
            }
            for (const auto& f : integrands) sum += f(u.data());
        }
        estimates.push_back(sum / per_shift);
    }
    double mean = 0;
    for (double e : estimates) mean += e;
    mean /= shifts;
    double var = 0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= (shifts - 1);
    return {o * mean, std::sqrt(var / shifts)};
}

/// Signed volume by the best available engine.
inline double volume(const Simplex& s, long long samples = 1 << 20, std::uint64_t seed = 0) {
    switch (s.dim()) {
        case 1: return length_h1(s);
        case 2: return area_h2(s);
        case 3: return vol_h3(s);
        default: return vol_numeric(s, samples, seed).value;
    }
}

}  // namespace scissors
