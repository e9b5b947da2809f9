// Independent reference computations shared by the unit tests and the acceptance binary.
#pragma once

#include <Eigen/Dense>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace scissors::oracle {

// ---------------------------------------------------------------------------------------
// Hyperplane complex of a simplex in P^m

inline std::vector<std::vector<int>> subsets(const std::vector<int>& ground, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > static_cast<int>(ground.size())) return out;
    std::vector<bool> pick(ground.size(), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<int> s;
        for (std::size_t i = 0; i < ground.size(); ++i)
            if (pick[i]) s.push_back(ground[i]);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

inline int rank_of(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    return static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank());
}

// coboundary from k-subsets to (k+1)-subsets with alternating signs
inline Eigen::MatrixXd coboundary(const std::vector<int>& ground, int k) {
    auto rows = subsets(ground, k + 1), cols = subsets(ground, k);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& big = rows[r];
            const auto& small = cols[c];
            if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) continue;
            int pos = 0;
            for (int x : big) {
                if (std::find(small.begin(), small.end(), x) == small.end()) break;
                ++pos;
            }
            d(r, c) = pos % 2 ? -1 : 1;
        }
    return d;
}

// Weight pieces of H^m(P^m - Q, L - L cap Q) from the E1 page over the strata L_I = P^{m-|I|}:
// each contributes Q(0) in degree 0 and, when m - |I| is odd, Q(-(m-|I|+1)/2) in the middle
// degree. With one ideal vertex x (hyperplane 0 is opposite x) edges through x meet Q once and
// carry no H^1, while the link of x adds the cokernel of the augmented complex of an
// (m-1)-simplex truncated at (m-2)-subsets.
inline std::map<int, int> graded_dims(int m, bool ideal) {
    std::vector<int> all(m + 1);
    std::iota(all.begin(), all.end(), 0);
    std::map<int, int> dims;
    dims[0] = static_cast<int>(subsets(all, m).size()) - rank_of(coboundary(all, m - 1));
    for (int size = 0; size <= m; ++size) {
        int k = m - size;
        if (k % 2 == 0) continue;
        int count = 0;
        for (const auto& I : subsets(all, size)) {
            bool through_x = std::find(I.begin(), I.end(), 0) == I.end();
            if (ideal && k == 1 && through_x) continue;
            ++count;
        }
        dims[k + 1] += count;
    }
    if (ideal) {
        std::vector<int> link(m);
        std::iota(link.begin(), link.end(), 1);
        dims[2] += static_cast<int>(subsets(link, m - 2).size()) - rank_of(coboundary(link, m - 3));
    }
    return dims;
}

// ---------------------------------------------------------------------------------------
// Finite group orders by enumeration

template <int N>
using ModMatrix = std::array<std::array<int, N>, N>;

template <int N>
long long count_matrices(int p, const std::function<bool(const ModMatrix<N>&)>& keep) {
    long long total = 1;
    for (int i = 0; i < N * N; ++i) total *= p;
    long long hits = 0;
    for (long long code = 0; code < total; ++code) {
        ModMatrix<N> m{};
        long long c = code;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                m[i][j] = static_cast<int>(c % p);
                c /= p;
            }
        hits += keep(m);
    }
    return hits;
}

template <int N>
int det_mod(ModMatrix<N> m, int p) {
    int det = 1;
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (m[r][c] % p) piv = r;
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        int inv = 1;
        while (inv * m[c][c] % p != 1) ++inv;
        for (int r = c + 1; r < N; ++r) {
            int f = m[r][c] * inv % p;
            for (int k = c; k < N; ++k) m[r][k] = ((m[r][k] - f * m[c][k]) % p + p) % p;
        }
    }
    return det;
}

template <int N>
long long sl_order(int p) {
    return count_matrices<N>(p, [p](const ModMatrix<N>& m) { return det_mod<N>(m, p) == 1; });
}

// |Sp_4(F_2)|: M^T J M = J with J pairing coordinates (0,2) and (1,3)
inline long long sp4_order_f2() {
    const int J[4][4] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
    return count_matrices<4>(2, [&](const ModMatrix<4>& m) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int s = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) s += m[a][i] * J[a][b] * m[b][j];
                if (s % 2 != J[i][j]) return false;
            }
        return true;
    });
}

// ---------------------------------------------------------------------------------------
// Union volume of products of Klein-disk triangles by quasi-Monte Carlo

struct Triangle {
    Eigen::Vector2d o;
    Eigen::Matrix2d inv;  // maps x - o to barycentric (l1, l2)
    Eigen::Vector2d lo, hi;

    explicit Triangle(const std::array<Eigen::Vector2d, 3>& v) : o(v[0]) {
        Eigen::Matrix2d A;
        A << v[1] - v[0], v[2] - v[0];
        inv = A.inverse();
        lo = v[0].cwiseMin(v[1]).cwiseMin(v[2]);
        hi = v[0].cwiseMax(v[1]).cwiseMax(v[2]);
    }
    bool contains(const Eigen::Vector2d& x, double tol = 0) const {
        Eigen::Vector2d l = inv * (x - o);
        return l(0) >= -tol && l(1) >= -tol && l(0) + l(1) <= 1 + tol;
    }
};

using TrianglePair = std::array<Triangle, 2>;

struct UnionEstimate {
    double value;
    double err;  // spread over independent scrambles
};

// hyperbolic area density in the Klein disk
inline double klein_density(const Eigen::Vector2d& x) { return std::pow(1 - x.squaredNorm(), -1.5); }

// Sobol points shifted by `shifts` independent Cranley-Patterson rotations over the bounding
// box of the union; the spread of the shifted estimates gives the error.
template <class Rng>
UnionEstimate union_volume(const std::vector<TrianglePair>& tiles, long long points, int shifts, Rng& rng) {
    Eigen::Vector2d lo[2], hi[2];
    for (int f = 0; f < 2; ++f) {
        lo[f] = tiles[0][f].lo;
        hi[f] = tiles[0][f].hi;
        for (const auto& t : tiles) {
            lo[f] = lo[f].cwiseMin(t[f].lo);
            hi[f] = hi[f].cwiseMax(t[f].hi);
        }
    }
    const double box = (hi[0] - lo[0]).prod() * (hi[1] - lo[1]).prod();
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> est;
    for (int s = 0; s < shifts; ++s) {
        std::array<double, 4> shift{u(rng), u(rng), u(rng), u(rng)};
        boost::random::sobol gen(4);
        double acc = 0;
        for (long long i = 0; i < points; ++i) {
            std::array<double, 4> z;
            for (auto& c : z) c = static_cast<double>(gen()) / (static_cast<double>(gen.max()) + 1.0);
            for (int k = 0; k < 4; ++k) z[k] = std::fmod(z[k] + shift[k], 1.0);
            Eigen::Vector2d x0(lo[0](0) + z[0] * (hi[0](0) - lo[0](0)), lo[0](1) + z[1] * (hi[0](1) - lo[0](1)));
            Eigen::Vector2d x1(lo[1](0) + z[2] * (hi[1](0) - lo[1](0)), lo[1](1) + z[3] * (hi[1](1) - lo[1](1)));
            bool in = false;
            for (const auto& t : tiles)
                if (t[0].contains(x0) && t[1].contains(x1)) {
                    in = true;
                    break;
                }
            if (in) acc += klein_density(x0) * klein_density(x1);
        }
        est.push_back(box * acc / static_cast<double>(points));
    }
    double mean = std::accumulate(est.begin(), est.end(), 0.0) / shifts, var = 0;
    for (double e : est) var += (e - mean) * (e - mean);
    return {mean, std::sqrt(var / (shifts - 1) / shifts)};
}

}  // namespace scissors::oracle
