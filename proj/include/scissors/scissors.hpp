#pragma once

// Dehn invariants of H^3 tetrahedra, their canonical form in R (x) R/piQ, and the generalized
// Dehn invariant on formal sums of product simplices.

#include "scissors/volume.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace scissors {

/// Edge order used throughout: 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::array<int, 2>, 6> kEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

namespace detail {

// Minkowski-unit normal of the hyperplane through three hyperboloid vectors, pointing away
// from `opposite`.
inline Eigen::Vector4d face_normal(const Eigen::Vector4d& a, const Eigen::Vector4d& b, const Eigen::Vector4d& c,
                                   const Eigen::Vector4d& opposite) {
    Eigen::Matrix<double, 3, 4> M;
    const Eigen::Vector4d J(-1, 1, 1, 1);
    M.row(0) = a.cwiseProduct(J).transpose();
    M.row(1) = b.cwiseProduct(J).transpose();
    M.row(2) = c.cwiseProduct(J).transpose();
    // kernel via cofactor expansion (generalized cross product)
    Eigen::Vector4d n;
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix3d minor;
        for (int r = 0; r < 3; ++r)
            for (int col = 0, j = 0; col < 4; ++col)
                if (col != k) minor(r, j++) = M(r, col);
        n(k) = ((k % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
    }
    double nn = -n(0) * n(0) + n.tail<3>().squaredNorm();
    n /= std::sqrt(nn);
    double side = -n(0) * opposite(0) + n.tail<3>().dot(opposite.tail<3>());
    if (side > 0) n = -n;
    return n;
}

}  // namespace detail

/// Interior dihedral angles of a tetrahedron in H^3 along the six edges (kEdges order).
/// Vertices may be ideal.
inline std::array<double, 6> dihedral_angles(const Simplex& s) {
    if (s.dim() != 3 || s.ambient_dim() != 3) throw std::invalid_argument("need a tetrahedron in H^3");
    std::array<Eigen::Vector4d, 4> X;
    for (int i = 0; i < 4; ++i) X[i] = hyperboloid_vector(s.vertex(i));
    std::array<Eigen::Vector4d, 4> N;  // normal of the face opposite vertex i
    for (int i = 0; i < 4; ++i) {
        std::array<int, 3> f{};
        for (int k = 0, j = 0; k < 4; ++k)
            if (k != i) f[j++] = k;
        N[i] = detail::face_normal(X[f[0]], X[f[1]], X[f[2]], X[i]);
    }
    std::array<double, 6> theta{};
    for (int e = 0; e < 6; ++e) {
        // the faces meeting at edge ij are those opposite the two other vertices
        int k = -1, l = -1;
        for (int v = 0; v < 4; ++v)
            if (v != kEdges[e][0] && v != kEdges[e][1]) (k < 0 ? k : l) = v;
        double c = -(-N[k](0) * N[l](0) + N[k].tail<3>().dot(N[l].tail<3>()));
        theta[e] = std::acos(std::clamp(c, -1.0, 1.0));
    }
    return theta;
}

/// Edge lengths in kEdges order (finite vertices only).
inline std::array<double, 6> edge_lengths(const Simplex& s) {
    std::array<double, 6> l{};
    for (int e = 0; e < 6; ++e) l[e] = dist(s.vertex(kEdges[e][0]), s.vertex(kEdges[e][1]));
    return l;
}

struct DehnTerm {
    double length;
    double angle;
};
using DehnSum = std::vector<DehnTerm>;

/// The six (length, dihedral angle) terms of a finite tetrahedron, in kEdges order.
/// A degenerate tetrahedron has empty invariant.
inline DehnSum dehn3(const Simplex& s) {
    if (s.dim() != 3 || s.ambient_dim() != 3) throw std::invalid_argument("dehn3 needs a tetrahedron in H^3");
    if (s.num_ideal() > 0) throw std::invalid_argument("dehn3: ideal edges need the extended invariant");
    if (orientation(s) == 0) return {};
    auto l = edge_lengths(s);
    auto t = dihedral_angles(s);
    DehnSum out;
    for (int e = 0; e < 6; ++e) out.push_back({l[e], t[e]});
    return out;
}

struct ReduceOptions {
    double tol = 1e-9;
    std::int64_t max_den = 10000;
    // lengths in ratio p/q with p, q up to this bound are rescaled onto a common length
    std::int64_t max_length_ratio = 12;
};

namespace detail {

inline double mod_pi(double a) {
    double r = std::fmod(a, kPi);
    if (r < 0) r += kPi;
    if (r >= kPi) r -= kPi;
    return r;
}

inline bool in_pi_q(double angle, const ReduceOptions& opt) {
    return recognize_rational(angle / kPi, opt.max_den, opt.tol).has_value();
}

// r with b = r a, small numerator and denominator; the tensor product is over Q so
// b (x) t = a (x) r t
inline std::optional<double> length_ratio(double a, double b, const ReduceOptions& opt) {
    auto r = recognize_rational(b / a, opt.max_length_ratio, opt.tol);
    if (!r || boost::multiprecision::abs(numerator(*r)) > opt.max_length_ratio) return std::nullopt;
    return to_double(*r);
}

}  // namespace detail

/// Canonical form in R (x) R/piQ. Repeats until nothing changes:
///  - terms with equal |length|, or lengths in a small rational ratio, are merged onto one length,
///  - terms whose angle lies in piQ are dropped,
///  - terms whose angles agree up to sign modulo piQ are merged by adding lengths,
///  - groups with |length| <= tol are dropped.
/// Output terms have positive length and angle in [0, pi).
inline DehnSum reduce(const DehnSum& in, const ReduceOptions& opt = {}) {
    DehnSum cur;
    for (const auto& t : in)
        if (std::fabs(t.length) > opt.tol) cur.push_back(t);
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        // sign normalization
        for (auto& t : cur) {
            if (t.length < 0) {
                t.length = -t.length;
                t.angle = -t.angle;
            }
            t.angle = detail::mod_pi(t.angle);
        }
        // equal lengths: l (x) a + l (x) b = l (x) (a + b)
        DehnSum merged;
        for (const auto& t : cur) {
            bool done = false;
            for (auto& m : merged) {
                if (std::fabs(m.length - t.length) <= opt.tol * std::max(1.0, m.length)) {
                    m.angle = detail::mod_pi(m.angle + t.angle);
                    done = changed = true;
                    break;
                }
                if (auto r = detail::length_ratio(m.length, t.length, opt)) {
                    m.angle = detail::mod_pi(m.angle + *r * t.angle);
                    done = changed = true;
                    break;
                }
            }
            if (!done) merged.push_back(t);
        }
        cur.clear();
        for (const auto& t : merged) {
            if (detail::in_pi_q(t.angle, opt)) {
                changed = true;
                continue;
            }
            cur.push_back(t);
        }
        // angles equal up to sign modulo piQ
        DehnSum grouped;
        for (const auto& t : cur) {
            bool done = false;
            for (auto& g : grouped) {
                if (detail::in_pi_q(t.angle - g.angle, opt)) {
                    g.length += t.length;
                    done = changed = true;
                    break;
                }
                if (detail::in_pi_q(t.angle + g.angle, opt)) {
                    g.length -= t.length;
                    done = changed = true;
                    break;
                }
            }
            if (!done) grouped.push_back(t);
        }
        cur.clear();
        for (const auto& g : grouped) {
            if (std::fabs(g.length) <= opt.tol) {
                changed = true;
                continue;
            }
            cur.push_back(g);
        }
        if (!changed) break;
    }
    for (auto& t : cur) {
        if (t.length < 0) {
            t.length = -t.length;
            t.angle = -t.angle;
        }
        t.angle = detail::mod_pi(t.angle);
    }
    return cur;
}

inline bool is_zero_dehn(const DehnSum& d, const ReduceOptions& opt = {}) { return reduce(d, opt).empty(); }

inline DehnSum operator+(DehnSum a, const DehnSum& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline DehnSum operator-(const DehnSum& d) {
    DehnSum out = d;
    for (auto& t : out) t.length = -t.length;
    return out;
}

inline DehnSum scaled(const DehnSum& d, double c) {
    DehnSum out = d;
    for (auto& t : out) t.length *= c;
    return out;
}

// ---------------------------------------------------------------------------------------
// Formal sums of product simplices

struct ScissorsSum {
    std::vector<std::pair<Rational, ProductSimplex>> terms;
};

/// One summand of D_k: (length (x) angle) in factor k, tensored with the untouched factors.
struct GeneralizedDehnTerm {
    std::vector<Simplex> companions;
    DehnSum dehn;
};

namespace detail {

inline bool same_simplex(const Simplex& a, const Simplex& b, double tol = 1e-12) {
    if (a.y.size() != b.y.size() || a.ambient_dim() != b.ambient_dim()) return false;
    for (std::size_t i = 0; i < a.y.size(); ++i)
        for (std::size_t j = 0; j < a.y[i].size(); ++j)
            if (std::fabs(a.y[i][j] - b.y[i][j]) > tol) return false;
    return true;
}

inline bool same_companions(const std::vector<Simplex>& a, const std::vector<Simplex>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_simplex(a[i], b[i])) return false;
    return true;
}

}  // namespace detail

/// D_k = id (x) .. (x) D_3 (x) .. (x) id applied to a formal sum; terms are collected per
/// companion tuple and reduced, so cancelling input yields an empty result.
inline std::vector<GeneralizedDehnTerm> generalized_dehn(const ScissorsSum& sum, int factor,
                                                         const ReduceOptions& opt = {}) {
    std::vector<GeneralizedDehnTerm> raw;
    for (const auto& [coeff, p] : sum.terms) {
        if (factor < 0 || factor >= static_cast<int>(p.factors.size()))
            throw std::invalid_argument("factor index out of range");
        const Simplex& s = p.factors[factor];
        if (s.dim() != 3 || s.ambient_dim() != 3)
            throw std::invalid_argument("generalized_dehn: only three-dimensional factors are supported");
        std::vector<Simplex> comp;
        for (int i = 0; i < static_cast<int>(p.factors.size()); ++i)
            if (i != factor) comp.push_back(p.factors[i]);
        DehnSum d = scaled(dehn3(s), to_double(coeff));
        auto it = std::find_if(raw.begin(), raw.end(),
                               [&](const GeneralizedDehnTerm& t) { return detail::same_companions(t.companions, comp); });
        if (it == raw.end())
            raw.push_back({std::move(comp), std::move(d)});
        else
            it->dehn = it->dehn + d;
    }
    std::vector<GeneralizedDehnTerm> out;
    for (auto& t : raw) {
        t.dehn = reduce(t.dehn, opt);
        if (!t.dehn.empty()) out.push_back(std::move(t));
    }
    return out;
}

/// Unreduced expansion: the six edge terms of factor k for each summand, in input order.
inline std::vector<GeneralizedDehnTerm> generalized_dehn_terms(const ScissorsSum& sum, int factor) {
    std::vector<GeneralizedDehnTerm> out;
    for (const auto& [coeff, p] : sum.terms) {
        std::vector<Simplex> comp;
        for (int i = 0; i < static_cast<int>(p.factors.size()); ++i)
            if (i != factor) comp.push_back(p.factors[i]);
        for (const auto& t : dehn3(p.factors.at(factor)))
            out.push_back({comp, {DehnTerm{to_double(coeff) * t.length, t.angle}}});
    }
    return out;
}

}  // namespace scissors
