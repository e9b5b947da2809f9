#pragma once

// Small dense linear algebra over an exact field (Rational or QuadElem).

#include "scissors/qfield.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace scissors {

template <class F>
using Matrix = std::vector<std::vector<F>>;

namespace detail {
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const QuadElem& x) { return x.is_zero(); }
}  // namespace detail

/// Row-reduces `m` in place to reduced echelon form, returns the pivot columns.
template <class F>
std::vector<int> row_reduce(Matrix<F>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!detail::is_zero(m[i][c])) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        F inv = F(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || detail::is_zero(m[i][c])) continue;
            F f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
int rank(Matrix<F> m) {
    return static_cast<int>(row_reduce(m).size());
}

template <class F>
F determinant(Matrix<F> m) {
    const int n = static_cast<int>(m.size());
    F det(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!detail::is_zero(m[i][c])) {
                p = i;
                break;
            }
        if (p < 0) return F(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        F inv = F(1) / m[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (detail::is_zero(m[i][c])) continue;
            F f = m[i][c] * inv;
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Unique solution of A x = b, or nullopt when A is singular.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& A, const std::vector<F>& b) {
    const int n = static_cast<int>(A.size());
    Matrix<F> aug = A;
    for (int i = 0; i < n; ++i) aug[i].push_back(b[i]);
    auto piv = row_reduce(aug);
    if (static_cast<int>(piv.size()) != n || piv.back() >= n) return std::nullopt;
    std::vector<F> x(n);
    for (int i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

/// Basis of the right kernel {x : A x = 0}; A has `cols` columns.
template <class F>
Matrix<F> kernel(Matrix<F> A, int cols) {
    auto piv = row_reduce(A);
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    Matrix<F> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(cols, F(0));
        v[free] = F(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace scissors
