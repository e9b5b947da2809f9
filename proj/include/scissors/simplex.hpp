#pragma once

// Geodesic simplices stored in Klein coordinates, product simplices, faces, subdivision,
// and the twisted symmetric-group action on products.

#include "scissors/hypmodel.hpp"
#include "scissors/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace scissors {

struct Simplex {
    std::vector<std::vector<double>> y;  // Klein coordinates, one row per vertex
    std::vector<bool> ideal;
    std::optional<std::vector<std::vector<QuadElem>>> exact;

    int dim() const { return static_cast<int>(y.size()) - 1; }
    int ambient_dim() const { return y.empty() ? 0 : static_cast<int>(y[0].size()); }
    int num_ideal() const { return static_cast<int>(std::count(ideal.begin(), ideal.end(), true)); }
    HPoint vertex(int i) const { return klein_point(y[i], ideal[i]); }
};

inline Simplex make_simplex(const std::vector<HPoint>& pts) {
    if (pts.empty()) throw std::invalid_argument("simplex needs at least one vertex");
    Simplex s;
    for (const auto& p : pts) {
        HPoint k = convert(p, Model::Klein);
        if (!s.y.empty() && k.coords.size() != s.y[0].size())
            throw std::invalid_argument("vertices live in different dimensions");
        s.y.push_back(k.coords);
        s.ideal.push_back(k.ideal);
    }
    return s;
}

inline Simplex make_simplex(const std::vector<std::vector<double>>& klein) {
    std::vector<HPoint> pts;
    for (const auto& y : klein) {
        double r2 = detail::sqnorm(y);
        pts.push_back(klein_point(y, std::fabs(r2 - 1) < 1e-12));
    }
    return make_simplex(pts);
}

/// Exact simplex over Q(sqrt d); a vertex is ideal iff sum y_i^2 = 1 exactly.
inline Simplex make_exact_simplex(const std::vector<std::vector<QuadElem>>& klein) {
    Simplex s;
    for (const auto& v : klein) {
        std::vector<double> y;
        QuadElem r(0);
        for (const auto& c : v) {
            y.push_back(c.embed(1));
            r += c * c;
        }
        s.y.push_back(std::move(y));
        s.ideal.push_back(r == QuadElem(1));
    }
    s.exact = klein;
    return s;
}

/// Sign of det of homogeneous coordinates (1, y_i). Only meaningful for m = n; for lower
/// dimensional simplices returns +1 when the vertices are affinely independent.
inline int orientation(const Simplex& s, double tol = 1e-13) {
    const int m = s.dim();
    const int n = s.ambient_dim();
    if (s.exact) {
        Matrix<QuadElem> M;
        for (const auto& v : *s.exact) {
            std::vector<QuadElem> row{QuadElem(1)};
            row.insert(row.end(), v.begin(), v.end());
            M.push_back(std::move(row));
        }
        if (m == n) return determinant(M).sign(1);
        return rank(M) == m + 1 ? 1 : 0;
    }
    Eigen::MatrixXd M(m + 1, n + 1);
    for (int i = 0; i <= m; ++i) {
        M(i, 0) = 1.0;
        for (int j = 0; j < n; ++j) M(i, j + 1) = s.y[i][j];
    }
    if (m == n) {
        double det = M.determinant();
        return std::fabs(det) <= tol ? 0 : (det > 0 ? 1 : -1);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(tol);
    return lu.rank() == m + 1 ? 1 : 0;
}

inline bool is_degenerate(const Simplex& s, double tol = 1e-13) { return orientation(s, tol) == 0; }

/// Swaps two vertices (reverses orientation).
inline Simplex reversed(Simplex s) {
    if (s.y.size() >= 2) {
        std::swap(s.y[0], s.y[1]);
        std::vector<bool>::swap(s.ideal[0], s.ideal[1]);
        if (s.exact) std::swap((*s.exact)[0], (*s.exact)[1]);
    }
    return s;
}

inline Simplex select_vertices(const Simplex& s, const std::vector<int>& idx) {
    Simplex f;
    for (int i : idx) {
        f.y.push_back(s.y[i]);
        f.ideal.push_back(s.ideal[i]);
    }
    if (s.exact) {
        f.exact.emplace();
        for (int i : idx) f.exact->push_back((*s.exact)[i]);
    }
    return f;
}

/// Pieces Delta(x_0,..,y,..,x_m) with y in slot i. With orientations read off the determinant,
/// the signed volumes of the pieces sum to the signed volume of s.
inline std::vector<Simplex> subdivide(const Simplex& s, const HPoint& y) {
    HPoint k = convert(y, Model::Klein);
    if (k.ideal || k.at_infinity) throw std::invalid_argument("subdivision point must be finite");
    if (static_cast<int>(k.coords.size()) != s.ambient_dim())
        throw std::invalid_argument("subdivision point has wrong dimension");
    std::vector<Simplex> out;
    for (int i = 0; i <= s.dim(); ++i) {
        Simplex p = s;
        p.y[i] = k.coords;
        p.ideal[i] = false;
        p.exact.reset();
        out.push_back(std::move(p));
    }
    return out;
}

/// Exact variant: y given over the coordinate field keeps pieces exact.
inline std::vector<Simplex> subdivide(const Simplex& s, const std::vector<QuadElem>& y) {
    if (!s.exact) throw std::invalid_argument("exact subdivision needs an exact simplex");
    QuadElem r(1);
    for (const auto& c : y) r -= c * c;
    if (r.sign(1) <= 0) throw std::invalid_argument("subdivision point must be finite");
    std::vector<Simplex> out;
    for (int i = 0; i <= s.dim(); ++i) {
        auto v = *s.exact;
        v[i] = y;
        out.push_back(make_exact_simplex(v));
    }
    return out;
}

struct Face {
    std::vector<int> indices;
    int sign;  // sign of the permutation (indices, complement)
    Simplex simplex;
};

inline int permutation_sign(const std::vector<int>& perm) {
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) s = -s;
    return s;
}

/// All k-dimensional faces in lexicographic order of their vertex subsets.
inline std::vector<Face> faces(const Simplex& s, int k) {
    const int m = s.dim();
    if (k < 0 || k > m) throw std::invalid_argument("face dimension out of range");
    std::vector<Face> out;
    std::vector<bool> mask(m + 1, false);
    std::fill(mask.begin(), mask.begin() + k + 1, true);
    do {
        std::vector<int> idx, perm;
        for (int i = 0; i <= m; ++i)
            if (mask[i]) idx.push_back(i);
        perm = idx;
        for (int i = 0; i <= m; ++i)
            if (!mask[i]) perm.push_back(i);
        out.push_back(Face{idx, permutation_sign(perm), select_vertices(s, idx)});
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

/// Factor i lives over the embedding places[i] of the common field k = Q(sqrt d).
struct ProductSimplex {
    std::vector<Simplex> factors;
    std::vector<int> places;

    ProductSimplex() = default;
    explicit ProductSimplex(std::vector<Simplex> f) : factors(std::move(f)) {
        for (std::size_t i = 0; i < factors.size(); ++i) places.push_back(i % 2 == 0 ? 1 : 2);
    }
};

inline Simplex conj(const Simplex& s) {
    if (!s.exact) throw std::invalid_argument("conjugation needs exact coordinates");
    auto v = *s.exact;
    for (auto& row : v)
        for (auto& c : row) c = c.conj();
    return make_exact_simplex(v);
}

inline std::int64_t field_of(const Simplex& s) {
    std::int64_t d = 1;
    for (const auto& row : *s.exact)
        for (const auto& c : row)
            if (!c.is_rational()) {
                if (d != 1 && d != c.d()) throw std::invalid_argument("simplex mixes fields");
                d = c.d();
            }
    return d;
}

/// (pi . p)_i = sigma_i sigma_{pi(i)}^{-1} Delta_{pi(i)}. This is a right action:
/// twist(a, twist(b, p)) = twist(b o a, p).
inline ProductSimplex twist(const std::vector<int>& perm, const ProductSimplex& p) {
    const std::size_t N = p.factors.size();
    if (perm.size() != N) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> check = perm;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < N; ++i)
        if (check[i] != static_cast<int>(i)) throw std::invalid_argument("not a permutation");
    std::int64_t d = 1;
    for (const auto& f : p.factors) {
        if (!f.exact) throw std::invalid_argument("twist needs exact factors");
        if (f.dim() != p.factors[0].dim()) throw std::invalid_argument("factor dimensions differ");
        std::int64_t df = field_of(f);
        if (df != 1) {
            if (d != 1 && d != df) throw std::invalid_argument("factors are not over conjugate fields");
            d = df;
        }
    }
    ProductSimplex out;
    out.places = p.places;
    for (std::size_t i = 0; i < N; ++i) {
        const Simplex& src = p.factors[perm[i]];
        out.factors.push_back(p.places[i] == p.places[perm[i]] ? src : conj(src));
    }
    return out;
}

/// Ideal vertex of H^3 as a point of C u {inf}; nullopt stands for infinity.
inline std::optional<std::complex<double>> boundary_coordinate(const Simplex& s, int i) {
    HPoint u = convert(s.vertex(i), Model::UpperHalf);
    if (u.at_infinity) return std::nullopt;
    return std::complex<double>(u.coords[0], u.coords[1]);
}

/// Cross-ratio sending (z0, z1, z2) to (0, 1, inf), evaluated at z3.
inline std::complex<double> cross_ratio(const std::array<std::optional<std::complex<double>>, 4>& z) {
    using C = std::complex<double>;
    // Projective form: cr = [(z3-z0)(z1-z2)] / [(z3-z2)(z1-z0)], factors with infinity drop out.
    auto diff = [&](int a, int b) -> std::optional<C> {
        if (!z[a] || !z[b]) return std::nullopt;
        return *z[a] - *z[b];
    };
    C num(1), den(1);
    for (auto [a, b, top] : {std::tuple{3, 0, true}, std::tuple{1, 2, true}, std::tuple{3, 2, false},
                             std::tuple{1, 0, false}}) {
        auto d = diff(a, b);
        if (!d) continue;
        if (top)
            num *= *d;
        else
            den *= *d;
    }
    return num / den;
}

/// Orbit element under the anharmonic group with Im > 0, Re <= 1/2, |w - 1| >= 1: a fundamental
/// domain for the rotation w -> 1/(1-w) about exp(i pi/3). `parity` receives +1 if the chosen
/// element is an even image of z and -1 otherwise.
inline std::complex<double> canonical_shape(std::complex<double> z, int* parity = nullptr) {
    using C = std::complex<double>;
    const C one(1.0, 0.0);
    std::array<std::pair<C, int>, 6> orbit{{{z, 1},
                                            {one / (one - z), 1},
                                            {one - one / z, 1},
                                            {one / z, -1},
                                            {one - z, -1},
                                            {z / (z - one), -1}}};
    double best = 1e300;
    std::pair<C, int> pick = orbit[0];
    for (const auto& [w, par] : orbit) {
        if (!(w.imag() > 0)) continue;
        double viol = std::max({w.real() - 0.5, 1.0 - std::abs(w - one), 0.0});
        if (viol < best - 1e-15) {
            best = viol;
            pick = {w, par};
        }
    }
    if (parity) *parity = pick.second;
    return pick.first;
}

/// Shape parameter of an all-ideal tetrahedron: the canonical representative (Im z > 0) of
/// the cross-ratio normalizing vertices 0,1,2 to 0,1,inf.
inline std::complex<double> cross_ratio_parameter(const Simplex& s, int* parity = nullptr) {
    if (s.ambient_dim() != 3 || s.dim() != 3 || s.num_ideal() != 4)
        throw std::invalid_argument("cross-ratio parameter needs four ideal vertices in H^3");
    std::array<std::optional<std::complex<double>>, 4> z;
    for (int i = 0; i < 4; ++i) z[i] = boundary_coordinate(s, i);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            bool same = (!z[i] && !z[j]) || (z[i] && z[j] && std::abs(*z[i] - *z[j]) < 1e-12);
            if (same) throw std::invalid_argument("coincident ideal vertices");
        }
    auto w = cross_ratio(z);
    if (std::fabs(w.imag()) < 1e-15) {
        if (parity) *parity = 1;
        return w;  // flat tetrahedron
    }
    return canonical_shape(w, parity);
}

}  // namespace scissors
