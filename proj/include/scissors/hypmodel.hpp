#pragma once

// Points and hyperplanes of H^n in the hyperboloid, Klein, Poincare-ball and upper-half-space
// models. The Klein model is the hub: every conversion passes through it.

#include "scissors/qfield.hpp"

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace scissors {

enum class Model { Hyperboloid, Klein, Ball, UpperHalf };

inline std::string to_string(Model m) {
    switch (m) {
        case Model::Hyperboloid: return "hyperboloid";
        case Model::Klein: return "klein";
        case Model::Ball: return "ball";
        case Model::UpperHalf: return "upper_half";
    }
    return "?";
}

inline Model parse_model(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "hyperboloid") return Model::Hyperboloid;
    if (s == "klein") return Model::Klein;
    if (s == "ball") return Model::Ball;
    if (s == "upper_half" || s == "upperhalf" || s == "upper-half") return Model::UpperHalf;
    throw std::invalid_argument("unknown model: " + s);
}

/// A finite or ideal point. Hyperboloid points carry n+1 coordinates, the others n.
/// In the upper half space the last coordinate is the height t; `at_infinity` marks the
/// ideal point at infinity (coords are then ignored).
struct HPoint {
    Model model = Model::Klein;
    std::vector<double> coords;
    bool ideal = false;
    bool at_infinity = false;

    int dim() const {
        if (model == Model::Hyperboloid) return static_cast<int>(coords.size()) - 1;
        return static_cast<int>(coords.size());
    }
};

inline HPoint klein_point(std::vector<double> y, bool ideal = false) {
    return HPoint{Model::Klein, std::move(y), ideal, false};
}

namespace detail {

inline double sqnorm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
}

inline HPoint to_klein(const HPoint& p) {
    switch (p.model) {
        case Model::Klein: return p;
        case Model::Hyperboloid: {
            if (p.coords.empty() || !(p.coords[0] > 0))
                throw std::invalid_argument("hyperboloid point needs x0 > 0");
            std::vector<double> y(p.coords.begin() + 1, p.coords.end());
            for (double& v : y) v /= p.coords[0];
            return klein_point(std::move(y), p.ideal);
        }
        case Model::Ball: {
            double b2 = sqnorm(p.coords);
            std::vector<double> y = p.coords;
            for (double& v : y) v = 2 * v / (1 + b2);
            return klein_point(std::move(y), p.ideal);
        }
        case Model::UpperHalf: {
            int n = p.dim();
            if (p.at_infinity) {
                std::vector<double> y(n, 0.0);
                y[n - 1] = 1.0;
                return klein_point(std::move(y), true);
            }
            // Cayley transform to the ball, then ball -> Klein.
            double u2 = 0;
            for (int i = 0; i + 1 < n; ++i) u2 += p.coords[i] * p.coords[i];
            double t = p.coords[n - 1];
            double denom = u2 + (t + 1) * (t + 1);
            std::vector<double> b(n);
            for (int i = 0; i + 1 < n; ++i) b[i] = 2 * p.coords[i] / denom;
            b[n - 1] = (u2 + t * t - 1) / denom;
            return to_klein(HPoint{Model::Ball, std::move(b), p.ideal, false});
        }
    }
    throw std::logic_error("unreachable");
}

inline HPoint from_klein(const HPoint& k, Model target) {
    const auto& y = k.coords;
    double y2 = sqnorm(y);
    switch (target) {
        case Model::Klein: return k;
        case Model::Hyperboloid: {
            double x0 = k.ideal ? 1.0 : 1.0 / std::sqrt(1 - y2);
            std::vector<double> x{x0};
            for (double v : y) x.push_back(x0 * v);
            return HPoint{Model::Hyperboloid, std::move(x), k.ideal, false};
        }
        case Model::Ball: {
            double s = k.ideal ? 1.0 : 1.0 + std::sqrt(std::max(0.0, 1 - y2));
            std::vector<double> b = y;
            for (double& v : b) v /= s;
            return HPoint{Model::Ball, std::move(b), k.ideal, false};
        }
        case Model::UpperHalf: {
            HPoint b = from_klein(k, Model::Ball);
            int n = static_cast<int>(b.coords.size());
            double d2 = 0;
            for (int i = 0; i < n; ++i) {
                double diff = b.coords[i] - (i == n - 1 ? 1.0 : 0.0);
                d2 += diff * diff;
            }
            if (d2 < 1e-300) return HPoint{Model::UpperHalf, std::vector<double>(n, 0.0), true, true};
            std::vector<double> u(n);
            for (int i = 0; i + 1 < n; ++i) u[i] = 2 * b.coords[i] / d2;
            u[n - 1] = k.ideal ? 0.0 : (1 - sqnorm(b.coords)) / d2;
            return HPoint{Model::UpperHalf, std::move(u), k.ideal, false};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

/// Throws std::invalid_argument unless p satisfies its model's constraints within tol.
inline void validate(const HPoint& p, double tol = 1e-9) {
    if (p.model == Model::UpperHalf && p.at_infinity) return;
    if (p.coords.empty()) throw std::invalid_argument("point has no coordinates");
    for (double c : p.coords)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
    switch (p.model) {
        case Model::Hyperboloid: {
            double q = -p.coords[0] * p.coords[0];
            for (std::size_t i = 1; i < p.coords.size(); ++i) q += p.coords[i] * p.coords[i];
            double target = p.ideal ? 0.0 : -1.0;
            double scale = p.coords[0] * p.coords[0];
            if (p.coords[0] <= 0 || std::fabs(q - target) > tol * std::max(1.0, scale))
                throw std::invalid_argument("point is not on the hyperboloid/light cone");
            break;
        }
        case Model::Klein:
        case Model::Ball: {
            double r2 = detail::sqnorm(p.coords);
            if (p.ideal ? std::fabs(r2 - 1) > tol : r2 >= 1)
                throw std::invalid_argument("point is not inside/on the unit ball");
            break;
        }
        case Model::UpperHalf: {
            double t = p.coords.back();
            if (p.ideal ? std::fabs(t) > tol : t <= 0)
                throw std::invalid_argument("upper half space point needs t > 0 (finite) or t = 0 (ideal)");
            break;
        }
    }
}

/// Image of p under the standard isometry into `target`. The upper-half point at infinity
/// maps to the Klein ideal point (0,...,0,1).
inline HPoint convert(const HPoint& p, Model target) {
    if (p.model == target) return p;
    return detail::from_klein(detail::to_klein(p), target);
}

/// Homogeneous hyperboloid vector (x0 > 0; (x,x) = -1 finite, x0 = 1 ideal).
inline Eigen::VectorXd hyperboloid_vector(const HPoint& p) {
    HPoint h = convert(p, Model::Hyperboloid);
    return Eigen::Map<const Eigen::VectorXd>(h.coords.data(), static_cast<Eigen::Index>(h.coords.size()));
}

inline HPoint from_hyperboloid_vector(const Eigen::VectorXd& x, bool ideal) {
    std::vector<double> c(x.data(), x.data() + x.size());
    if (ideal) {
        for (double& v : c) v /= x(0);
    }
    return HPoint{Model::Hyperboloid, std::move(c), ideal, false};
}

/// Minkowski form -x0 y0 + sum xi yi.
inline double minkowski(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

/// Hyperbolic distance via the hyperboloid, in the 2 asinh form to keep precision near 0.
inline double dist(const HPoint& p, const HPoint& q) {
    bool pi = p.ideal || p.at_infinity, qi = q.ideal || q.at_infinity;
    if (pi || qi) throw std::domain_error("infinite length");
    Eigen::VectorXd x = hyperboloid_vector(p), y = hyperboloid_vector(q);
    Eigen::VectorXd diff = x - y;
    double s = std::max(0.0, minkowski(diff, diff));
    return 2 * std::asinh(std::sqrt(s) / 2);
}

/// Distance through the cross-ratio of the two points with the ideal endpoints of the Klein
/// chord through them: d = 1/2 log [x1 x0 | q0 q1].
inline double dist_cross_ratio(const HPoint& p, const HPoint& q) {
    if (p.ideal || q.ideal || p.at_infinity || q.at_infinity) throw std::domain_error("infinite length");
    auto a = convert(p, Model::Klein).coords;
    auto b = convert(q, Model::Klein).coords;
    // |a + s (b - a)|^2 = 1  =>  A s^2 + 2 B s + C = 0
    double A = 0, B = 0, C = -1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = b[i] - a[i];
        A += d * d;
        B += a[i] * d;
        C += a[i] * a[i];
    }
    if (A == 0) return 0.0;
    double disc = std::sqrt(B * B - A * C);
    double s_minus = (-B - disc) / A;  // < 0
    double s_plus = (-B + disc) / A;   // > 1
    return 0.5 * std::log((s_plus * (1 - s_minus)) / ((s_plus - 1) * (-s_minus)));
}

/// Diagonal quadratic form with exactly one negative entry (at place 1).
struct QuadraticForm {
    std::vector<QuadElem> diag;

    static QuadraticForm standard(int n) {
        QuadraticForm q;
        q.diag.assign(n + 1, QuadElem(1));
        q.diag[0] = QuadElem(-1);
        return q;
    }

    int dim() const { return static_cast<int>(diag.size()) - 1; }

    void check() const {
        int neg = 0;
        for (const auto& e : diag) {
            int s = e.sign(1);
            if (s == 0) throw std::invalid_argument("degenerate quadratic form");
            if (s < 0) ++neg;
        }
        if (neg != 1) throw std::invalid_argument("quadratic form must have signature (n,1)");
    }

    QuadElem operator()(const std::vector<QuadElem>& u, const std::vector<QuadElem>& v) const {
        if (u.size() != diag.size() || v.size() != diag.size())
            throw std::invalid_argument("vector length does not match the form");
        QuadElem s(0);
        for (std::size_t i = 0; i < diag.size(); ++i) s += diag[i] * u[i] * v[i];
        return s;
    }

    double eval(const std::vector<double>& u, const std::vector<double>& v, int place = 1) const {
        double s = 0;
        for (std::size_t i = 0; i < diag.size(); ++i) s += diag[i].embed(place) * u[i] * v[i];
        return s;
    }

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) { return a.diag == b.diag; }
};

/// Hyperplane {x : (normal, x)_q = 0}; the normal is space-like.
struct Hyperplane {
    std::vector<QuadElem> normal;
    QuadraticForm form;

    Hyperplane(std::vector<QuadElem> n, QuadraticForm q) : normal(std::move(n)), form(std::move(q)) {
        if (normal.size() != form.diag.size()) throw std::invalid_argument("normal/form size mismatch");
        bool nonzero = false;
        for (const auto& c : normal) nonzero = nonzero || !c.is_zero();
        if (!nonzero) throw std::invalid_argument("zero normal");
        if (form(normal, normal).sign(1) <= 0)
            throw std::invalid_argument("hyperplane normal must be space-like");
    }

    QuadElem self_product() const { return form(normal, normal); }
};

struct Angle {
    double theta;
};
struct Parallel {};
struct Ultraparallel {
    double distance;
};
using DihedralKind = std::variant<Angle, Parallel, Ultraparallel>;

/// Dihedral classification of two hyperplanes. cos_exact holds -(e1,e2)/sqrt((e1,e1)(e2,e2))
/// whenever that square root lies in the field.
struct Dihedral {
    DihedralKind kind;
    QuadElem cos_squared;
    std::optional<QuadElem> cos_exact;
    double cos_value = 0;
};

/// cos theta = -(e1,e2)/sqrt((e1,e1)(e2,e2)). |cos| = 1 (including a hyperplane with
/// itself) is reported as Parallel.
inline Dihedral dihedral_angle(const Hyperplane& h1, const Hyperplane& h2) {
    if (!(h1.form == h2.form)) throw std::invalid_argument("hyperplanes under different forms");
    QuadElem e11 = h1.self_product(), e22 = h2.self_product();
    QuadElem e12 = h1.form(h1.normal, h2.normal);
    QuadElem prod = e11 * e22;
    Dihedral out{Parallel{}, e12 * e12 / prod, std::nullopt, 0.0};
    if (auto root = prod.sqrt_in_field()) {
        // choose the positive root at place 1
        QuadElem r = root->sign(1) < 0 ? -*root : *root;
        out.cos_exact = -e12 / r;
    }
    out.cos_value = -e12.embed(1) / std::sqrt(prod.embed(1));
    int cmp = (e12 * e12 - prod).sign(1);
    if (cmp == 0) {
        out.kind = Parallel{};
    } else if (cmp < 0) {
        out.kind = Angle{std::acos(std::clamp(out.cos_value, -1.0, 1.0))};
    } else {
        out.kind = Ultraparallel{std::acosh(std::fabs(out.cos_value))};
    }
    return out;
}

/// True iff 1 - sum y_i^2 is a nonzero square in the coordinate field.
inline bool is_rational_point(const std::vector<QuadElem>& y) {
    QuadElem v(1);
    for (const auto& c : y) v -= c * c;
    if (v.is_zero()) return false;
    return v.sqrt_in_field().has_value();
}

/// Lorentz boost of rapidity `r` mixing x0 with coordinate `axis` (1-based).
inline Eigen::MatrixXd lorentz_boost(int n, int axis, double r) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n + 1, n + 1);
    L(0, 0) = std::cosh(r);
    L(axis, axis) = std::cosh(r);
    L(0, axis) = std::sinh(r);
    L(axis, 0) = std::sinh(r);
    return L;
}

/// Random orientation-preserving isometry of H^n: spatial rotation composed with boosts.
template <class Rng>
Eigen::MatrixXd random_isometry(int n, Rng& rng, double max_rapidity = 1.0) {
    std::normal_distribution<double> g(0, 1);
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    if (Q.determinant() < 0) Q.col(0) *= -1;
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n + 1, n + 1);
    R.bottomRightCorner(n, n) = Q;
    std::uniform_real_distribution<double> u(-max_rapidity, max_rapidity);
    Eigen::MatrixXd L = R;
    for (int axis = 1; axis <= n; ++axis) L = lorentz_boost(n, axis, u(rng)) * L;
    return L;
}

/// Applies a Lorentz matrix to a point, returning it in its original model.
inline HPoint apply_isometry(const Eigen::MatrixXd& L, const HPoint& p) {
    bool ideal = p.ideal || p.at_infinity;
    Eigen::VectorXd x = L * hyperboloid_vector(p);
    return convert(from_hyperboloid_vector(x, ideal), p.model);
}

}  // namespace scissors
