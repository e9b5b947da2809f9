#pragma once

// Special values of zeta and quadratic L-functions: exact values at negative integers from
// generalized Bernoulli numbers, numeric values from series and Euler products, the
// functional equation between them, finite group orders and covolume classes.

#include "scissors/linalg.hpp"
#include "scissors/qfield.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/expint.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scissors {

// ---------------------------------------------------------------------------------------
// Quadratic characters

struct DirichletChar {
    std::int64_t modulus = 1;
    std::vector<int> values{1};  // values[a mod f]

    int operator()(std::int64_t a) const {
        std::int64_t r = a % modulus;
        if (r < 0) r += modulus;
        return values[static_cast<std::size_t>(r)];
    }
    bool is_trivial() const { return modulus == 1; }
    bool is_even() const { return (*this)(-1) == 1; }
};

/// Kronecker symbol (a/n).
inline int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        std::int64_t r = ((a % 8) + 8) % 8;
        if ((v % 2 == 1) && (r == 3 || r == 5)) result = -result;
    }
    // Jacobi symbol (a/n), n odd positive
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline DirichletChar trivial_character() { return {}; }

/// The character a -> (D/a) of conductor |D| for a fundamental discriminant D.
inline DirichletChar kronecker_character(std::int64_t D) {
    DirichletChar chi;
    chi.modulus = D < 0 ? -D : D;
    chi.values.assign(static_cast<std::size_t>(chi.modulus), 0);
    for (std::int64_t a = 0; a < chi.modulus; ++a) chi.values[a] = kronecker(D, a == 0 ? chi.modulus : a);
    if (chi.modulus == 1) chi.values = {1};
    return chi;
}

/// d with all square factors removed (sign kept).
inline std::int64_t squarefree_part(std::int64_t d) {
    if (d == 0) throw std::invalid_argument("squarefree_part of 0");
    std::int64_t s = d < 0 ? -1 : 1, n = d < 0 ? -d : d, out = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    return s * out * n;
}

/// Discriminant of Q(sqrt d).
inline std::int64_t fundamental_discriminant(std::int64_t d) {
    std::int64_t s = squarefree_part(d);
    if (s == 1) throw std::invalid_argument("Q(sqrt d) is not a quadratic field for square d");
    std::int64_t m4 = ((s % 4) + 4) % 4;
    return m4 == 1 ? s : 4 * s;
}

// ---------------------------------------------------------------------------------------
// Bernoulli numbers

namespace detail {

inline BigInt binomial_big(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace detail

/// B_n with B_1 = -1/2.
inline Rational bernoulli(int n) {
    static std::vector<Rational> cache{Rational(1)};
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        Rational s = 0;
        for (int k = 0; k < m; ++k) s += Rational(detail::binomial_big(m + 1, k)) * cache[k];
        cache.push_back(-s / (m + 1));
    }
    return cache[n];
}

inline Rational bernoulli_polynomial(int n, const Rational& x) {
    Rational s = 0, xp = 1;  // x^{n-k} built from k = n downwards
    for (int k = n; k >= 0; --k) {
        s += Rational(detail::binomial_big(n, k)) * bernoulli(k) * xp;
        xp *= x;
    }
    return s;
}

/// B_{n,chi} = f^{n-1} sum_{a=1}^{f} chi(a) B_n(a/f). L(chi, 1-n) = -B_{n,chi}/n.
inline Rational gen_bernoulli(int n, const DirichletChar& chi) {
    if (n < 1) throw std::invalid_argument("gen_bernoulli needs n >= 1");
    const std::int64_t f = chi.modulus;
    Rational s = 0;
    for (std::int64_t a = 1; a <= f; ++a) {
        int c = chi(a);
        if (c == 0) continue;
        s += c * bernoulli_polynomial(n, make_rational(a, f));
    }
    BigInt fp = boost::multiprecision::pow(BigInt(f), n - 1);
    return s * Rational(fp);
}

inline Rational l_value_negative(int n, const DirichletChar& chi) { return -gen_bernoulli(n, chi) / n; }

struct ZetaSpecial {
    Rational value;
    bool trivial_zero = false;
    std::int64_t discriminant = 1;
};

/// zeta_k(1-n) for k = Q(sqrt d) real quadratic, as zeta(1-n) L(chi_D, 1-n).
inline ZetaSpecial zeta_quad_special(std::int64_t d, int n) {
    if (d <= 0) throw std::invalid_argument("zeta_quad_special: Q(sqrt d) must be real quadratic");
    if (n < 2) throw std::invalid_argument("zeta_quad_special: n >= 2 required");
    std::int64_t D = fundamental_discriminant(d);
    if (n % 2) return {Rational(0), true, D};
    Rational z = l_value_negative(n, trivial_character());
    Rational l = l_value_negative(n, kronecker_character(D));
    return {z * l, false, D};
}

// ---------------------------------------------------------------------------------------
// Numeric values

/// Gamma on the whole real line away from poles; reflection below 1/2.
inline double gamma_fn(double x) {
    if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * std::tgamma(1 - x));
    return std::tgamma(x);
}

/// sum_{n>=1} chi(n) n^{-s}: the first `terms` terms (rounded down to whole periods)
/// plus an Euler-Maclaurin tail in each residue class.
inline double dirichlet_series(const DirichletChar& chi, double s, std::int64_t terms) {
    if (s <= 1.0 && chi.is_trivial()) throw std::domain_error("zeta diverges for s <= 1");
    const std::int64_t f = chi.modulus;
    std::int64_t K = std::max<std::int64_t>(1, terms / f);
    long double sum = 0;
    for (std::int64_t n = K * f; n >= 1; --n) {
        int c = chi(n);
        if (c) sum += c * std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    }
    for (std::int64_t a = 1; a <= f; ++a) {
        int c = chi(a);
        if (!c) continue;
        long double u = a + static_cast<long double>(f) * K;
        long double fs = f;
        long double tail = std::pow(u, 1 - s) / (fs * (s - 1)) + 0.5L * std::pow(u, -s) +
                           s * fs * std::pow(u, -s - 1) / 12 -
                           s * (s + 1) * (s + 2) * fs * fs * fs * std::pow(u, -s - 3) / 720;
        sum += c * tail;
    }
    return static_cast<double>(sum);
}

/// zeta_k(s) for k = Q (d = 1) or Q(sqrt d), by series.
inline double zeta_quad_series(std::int64_t d, double s, std::int64_t terms) {
    double z = dirichlet_series(trivial_character(), s, terms);
    if (d == 1) return z;
    return z * dirichlet_series(kronecker_character(fundamental_discriminant(d)), s, terms);
}

/// zeta_k(1-n) via Lambda(s) = Lambda(1-s), Lambda(s) = D^{s/2} (pi^{-s/2} Gamma(s/2))^r zeta_k(s),
/// with zeta_k(n) from the series. d = 1 means k = Q.
inline double zeta_numeric_fe(std::int64_t d, int n, std::int64_t terms) {
    if (n < 2) throw std::invalid_argument("zeta_numeric_fe: n >= 2 required");
    if (n % 2) return 0.0;
    const double pi = std::numbers::pi;
    double D = 1;
    int r = 1;
    if (d != 1) {
        if (d <= 0) throw std::invalid_argument("zeta_numeric_fe: real quadratic field required");
        D = static_cast<double>(fundamental_discriminant(d));
        r = 2;
    }
    double zn = zeta_quad_series(d, n, terms);
    double lam = std::pow(D, n / 2.0) * std::pow(std::pow(pi, -n / 2.0) * gamma_fn(n / 2.0), r) * zn;
    double s0 = 1.0 - n;
    double g = std::pow(D, s0 / 2) * std::pow(std::pow(pi, -s0 / 2) * gamma_fn(s0 / 2), r);
    return lam / g;
}

// ---------------------------------------------------------------------------------------
// Integer polynomials, reduction mod p, Euler products

/// Coefficients, constant term first.
using IntPoly = std::vector<std::int64_t>;

/// Parses expressions like "x^4-x^2-1", "2x^3 + x - 7", "x".
inline IntPoly parse_polynomial(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    std::map<int, std::int64_t> coeff;
    std::size_t i = 0;
    while (i < s.size()) {
        int sgn = 1;
        if (s[i] == '+' || s[i] == '-') {
            sgn = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::int64_t c = 1;
        bool have_c = false;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) {
            c = std::stoll(s.substr(i, j - i));
            have_c = true;
            i = j;
        }
        if (i < s.size() && s[i] == '*') ++i;
        int e = 0;
        if (i < s.size() && s[i] == 'x') {
            e = 1;
            ++i;
            if (i < s.size() && s[i] == '^') {
                ++i;
                j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw std::invalid_argument("malformed exponent in " + text);
                e = std::stoi(s.substr(i, j - i));
                i = j;
            }
        } else if (!have_c) {
            throw std::invalid_argument("malformed polynomial: " + text);
        }
        coeff[e] += sgn * c;
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("malformed polynomial: " + text);
    }
    IntPoly p(static_cast<std::size_t>(coeff.rbegin()->first) + 1, 0);
    for (auto [e, c] : coeff) p[e] = c;
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

inline std::string polynomial_to_string(const IntPoly& p) {
    std::string out;
    for (int e = static_cast<int>(p.size()) - 1; e >= 0; --e) {
        std::int64_t c = p[e];
        if (c == 0) continue;
        std::int64_t a = c < 0 ? -c : c;
        if (!out.empty()) out += c < 0 ? "-" : "+";
        else if (c < 0) out += "-";
        if (a != 1 || e == 0) out += std::to_string(a);
        if (e >= 1) out += "x";
        if (e >= 2) out += "^" + std::to_string(e);
    }
    return out.empty() ? "0" : out;
}

inline int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

namespace detail {

using ModPoly = std::vector<std::int64_t>;

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

inline std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    a %= p;
    if (a < 0) a += p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly reduce_mod(const IntPoly& f, std::int64_t p) {
    ModPoly a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = ((f[i] % p) + p) % p;
    trim(a);
    return a;
}

inline ModPoly sub(ModPoly a, const ModPoly& b, std::int64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] - b[i] + p) % p;
    trim(a);
    return a;
}

inline ModPoly mul(const ModPoly& a, const ModPoly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(c);
    return c;
}

// quotient and remainder, b nonzero
inline std::pair<ModPoly, ModPoly> divmod(ModPoly a, const ModPoly& b, std::int64_t p) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    ModPoly q(a.size() - b.size() + 1, 0);
    std::int64_t inv = powmod(b.back(), p - 2, p);
    for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        std::int64_t c = mulmod(a[i], inv, p);
        int shift = i - static_cast<int>(b.size()) + 1;
        q[shift] = c;
        if (c)
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] - mulmod(c, b[j], p) + p) % p;
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline ModPoly monic(ModPoly a, std::int64_t p) {
    if (a.empty()) return a;
    std::int64_t inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

inline ModPoly gcd(ModPoly a, ModPoly b, std::int64_t p) {
    while (!b.empty()) {
        auto r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline ModPoly derivative(const ModPoly& a, std::int64_t p) {
    ModPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], static_cast<std::int64_t>(i) % p, p));
    trim(d);
    return d;
}

inline ModPoly powmod_poly(ModPoly base, std::int64_t e, const ModPoly& m, std::int64_t p) {
    ModPoly r{1};
    base = divmod(base, m, p).second;
    while (e) {
        if (e & 1) r = divmod(mul(r, base, p), m, p).second;
        base = divmod(mul(base, base, p), m, p).second;
        e >>= 1;
    }
    return r;
}

// product of the distinct monic irreducible factors
inline ModPoly radical(const ModPoly& f, std::int64_t p) {
    if (f.size() <= 1) return {1};
    ModPoly df = derivative(f, p);
    if (df.empty()) {
        // f = g(x^p) = g(x)^p over F_p
        ModPoly g;
        for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p)) g.push_back(f[i]);
        return radical(g, p);
    }
    ModPoly c = gcd(f, df, p);
    ModPoly w = monic(divmod(f, c, p).first, p);
    ModPoly rc = radical(c, p);
    ModPoly common = gcd(w, rc, p);
    return monic(mul(w, divmod(rc, common, p).first, p), p);
}

// degrees of the irreducible factors of a squarefree monic polynomial
inline std::vector<int> distinct_degree_factor_degrees(ModPoly g, std::int64_t p) {
    std::vector<int> degs;
    ModPoly x{0, 1};
    ModPoly h = x;
    for (int d = 1; 2 * d <= static_cast<int>(g.size()) - 1; ++d) {
        h = powmod_poly(h, p, g, p);
        ModPoly gd = gcd(g, sub(h, x, p), p);
        int k = (static_cast<int>(gd.size()) - 1) / d;
        for (int i = 0; i < k; ++i) degs.push_back(d);
        if (k > 0) {
            g = monic(divmod(g, gd, p).first, p);
            h = divmod(h, g, p).second;
        }
    }
    if (g.size() > 1) degs.push_back(static_cast<int>(g.size()) - 1);
    return degs;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<bool> sieve(static_cast<std::size_t>(n) + 1, true);
    std::vector<std::int64_t> out;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return out;
}

inline Rational eval_rational(const IntPoly& f, const Rational& x) {
    Rational r = 0;
    for (int i = degree(f); i >= 0; --i) r = r * x + f[i];
    return r;
}

// exact division test over Q
inline bool divides_over_q(const std::vector<Rational>& g, const IntPoly& f) {
    std::vector<Rational> a(f.begin(), f.end());
    const int dg = static_cast<int>(g.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dg; --i) {
        Rational c = a[i] / g[dg];
        for (int j = 0; j <= dg; ++j) a[i - dg + j] -= c * g[j];
    }
    for (int i = 0; i < dg; ++i)
        if (a[i] != 0) return false;
    return true;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    n = n < 0 ? -n : n;
    std::vector<std::int64_t> out;
    for (std::int64_t k = 1; k * k <= n; ++k)
        if (n % k == 0) {
            out.push_back(k);
            if (k * k != n) out.push_back(n / k);
        }
    return out;
}

// Kronecker's method: does f have an integer factor of degree d?
inline bool has_factor_of_degree(const IntPoly& f, int d) {
    std::vector<std::int64_t> xs, vals;
    for (std::int64_t k = 0; static_cast<int>(xs.size()) <= d; ++k) {
        std::int64_t x = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
        Rational v = eval_rational(f, Rational(x));
        if (v == 0) return true;  // linear factor x - x0
        if (abs(v) > Rational(1000000000)) throw std::runtime_error("irreducibility check: values too large");
        xs.push_back(x);
        vals.push_back(static_cast<std::int64_t>(num(v)));
    }
    std::vector<std::vector<std::int64_t>> choices;
    std::size_t total = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<std::int64_t> c;
        for (auto q : divisors(vals[i])) {
            c.push_back(q);
            if (i > 0) c.push_back(-q);
        }
        total *= c.size();
        choices.push_back(std::move(c));
    }
    if (total > 5000000) throw std::runtime_error("irreducibility check: too many candidates");
    std::vector<std::size_t> idx(xs.size(), 0);
    for (std::size_t it = 0; it < total; ++it) {
        // Lagrange interpolation of the candidate values
        std::vector<Rational> g(d + 1, Rational(0));
        for (int i = 0; i <= d; ++i) {
            std::vector<Rational> basis{Rational(1)};
            Rational denom = 1;
            for (int j = 0; j <= d; ++j) {
                if (j == i) continue;
                std::vector<Rational> nb(basis.size() + 1, Rational(0));
                for (std::size_t k = 0; k < basis.size(); ++k) {
                    nb[k + 1] += basis[k];
                    nb[k] -= basis[k] * xs[j];
                }
                basis = std::move(nb);
                denom *= xs[i] - xs[j];
            }
            Rational yi = choices[i][idx[i]];
            for (int k = 0; k <= d; ++k) g[k] += yi * basis[k] / denom;
        }
        bool integral = g[d] != 0;
        for (const auto& c : g) integral = integral && den(c) == 1;
        if (integral && divides_over_q(g, f)) return true;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] < choices[k].size()) break;
            idx[k] = 0;
        }
    }
    return false;
}

}  // namespace detail

/// Irreducibility over Q: factor-degree patterns mod primes, then Kronecker's method for any
/// degree the patterns cannot exclude.
inline bool is_irreducible(const IntPoly& f, std::int64_t prime_bound = 2000) {
    const int n = degree(f);
    if (n < 1) return false;
    if (n == 1) return true;
    std::vector<bool> possible(n, true);  // possible[k]: a factor of degree k not yet excluded
    possible[0] = false;
    auto remaining = [&] { return std::count(possible.begin(), possible.end(), true); };
    for (std::int64_t p : detail::primes_up_to(prime_bound)) {
        if (f.back() % p == 0) continue;
        auto fp = detail::monic(detail::reduce_mod(f, p), p);
        if (detail::gcd(fp, detail::derivative(fp, p), p).size() > 1) continue;
        auto degs = detail::distinct_degree_factor_degrees(fp, p);
        std::vector<bool> sums(n + 1, false);
        sums[0] = true;
        for (int dd : degs)
            for (int k = n; k >= dd; --k)
                if (sums[k - dd]) sums[k] = true;
        for (int k = 1; k < n; ++k) possible[k] = possible[k] && sums[k];
        if (remaining() == 0) return true;
    }
    for (int k = 1; 2 * k <= n; ++k)
        if ((possible[k] || possible[n - k]) && detail::has_factor_of_degree(f, k)) return false;
    return true;
}

/// Discriminant of the polynomial: (-1)^{n(n-1)/2} Res(f, f') / lc(f).
inline BigInt polynomial_discriminant(const IntPoly& f) {
    const int n = degree(f);
    if (n < 1) throw std::invalid_argument("discriminant of a constant");
    if (n == 1) return 1;
    IntPoly df;
    for (int i = 1; i <= n; ++i) df.push_back(f[i] * i);
    const int m = n - 1, size = n + m;
    Matrix<Rational> S(size, std::vector<Rational>(size, Rational(0)));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) S[r][r + i] = f[n - i];
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) S[m + r][r + i] = df[m - i];
    Rational res = determinant(S);
    Rational disc = res / f.back();
    if ((n * (n - 1) / 2) % 2) disc = -disc;
    return num(disc);
}

struct PrimeSplitting {
    std::int64_t p;
    std::vector<int> residue_degrees;
    bool ramified = false;
    bool maximal = true;  // Dedekind criterion holds at p
};

/// Splitting of p in Q[x]/(f) read off from f mod p. For p | disc the Dedekind criterion
/// decides whether Z[x]/(f) is p-maximal; if not, the degrees of the radical are used and
/// the prime is flagged.
inline PrimeSplitting split_prime(const IntPoly& f, std::int64_t p) {
    using namespace detail;
    PrimeSplitting out{p, {}, false, true};
    if (f.back() % p == 0) {
        // the leading coefficient vanishes: fall back to the reduced polynomial, flagged
        out.maximal = false;
        out.ramified = true;
        auto fp = reduce_mod(f, p);
        if (fp.size() > 1) out.residue_degrees = distinct_degree_factor_degrees(radical(monic(fp, p), p), p);
        return out;
    }
    auto fp = monic(reduce_mod(f, p), p);
    auto g = radical(fp, p);
    if (g.size() == fp.size()) {
        out.residue_degrees = distinct_degree_factor_degrees(fp, p);
        return out;
    }
    out.ramified = true;
    out.residue_degrees = distinct_degree_factor_degrees(g, p);
    // Dedekind: with f = g h mod p (g the radical), F = (G H - f)/p for integer lifts
    // G, H; Z[x]/(f) is p-maximal iff gcd(F mod p, g, h) = 1.
    if (f.back() != 1 && f.back() != -1) {
        out.maximal = false;
        return out;
    }
    auto h = divmod(fp, g, p).first;
    std::vector<BigInt> G(g.begin(), g.end()), H(h.begin(), h.end()), GH(G.size() + H.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < H.size(); ++j) GH[i + j] += G[i] * H[j];
    // f monic with leading coefficient +-1: compare against the monic normalization
    std::vector<BigInt> fm(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fm[i] = BigInt(f[i]) * f.back();
    ModPoly F;
    for (std::size_t i = 0; i < fm.size(); ++i) {
        BigInt diff = GH[i] - fm[i];
        BigInt q = diff / p;
        BigInt r = q % p;
        if (r < 0) r += p;
        F.push_back(static_cast<std::int64_t>(r));
    }
    trim(F);
    auto c = gcd(g, h, p);
    if (!F.empty()) c = gcd(c, F, p);
    out.maximal = c.size() <= 1;
    return out;
}

struct EulerProduct {
    double value = 0;
    double tail_error = 0;  // estimate of the relative truncation error
    std::vector<std::int64_t> flagged_primes;
    std::int64_t p_max = 0;
};

/// prod_{p <= p_max} prod_{P | p} (1 - N(P)^{-s})^{-1} for the field Q[x]/(minpoly).
inline EulerProduct dedekind_euler(const IntPoly& minpoly, double s, std::int64_t p_max) {
    if (degree(minpoly) < 1) throw std::invalid_argument("dedekind_euler: constant polynomial");
    if (!(s > 1.0)) throw std::invalid_argument("dedekind_euler: s must exceed 1");
    if (p_max < 2) throw std::invalid_argument("dedekind_euler: p_max too small");
    if (!is_irreducible(minpoly)) throw std::invalid_argument("dedekind_euler: reducible polynomial");
    EulerProduct out;
    out.p_max = p_max;
    // a quadratic field is generated by a root of its maximal-order polynomial
    IntPoly f = minpoly;
    if (degree(f) == 2) {
        BigInt disc = BigInt(f[1]) * f[1] - 4 * BigInt(f[2]) * f[0];
        std::int64_t D = fundamental_discriminant(disc.convert_to<std::int64_t>());
        f = (D % 4 == 0) ? IntPoly{-D / 4, 0, 1} : IntPoly{(1 - D) / 4, -1, 1};
    }
    long double logsum = 0;
    for (std::int64_t p : detail::primes_up_to(p_max)) {
        auto sp = split_prime(f, p);
        if (!sp.maximal) out.flagged_primes.push_back(p);
        for (int f : sp.residue_degrees)
            logsum -= std::log1p(-std::pow(static_cast<long double>(p), -s * f));
    }
    // Primes beyond p_max carry on average one degree-one prime each (prime ideal theorem),
    // so the missing log is close to sum_{p > P} p^{-s} ~ E1((s - 1) log P).
    const double P = static_cast<double>(p_max);
    const double tail = boost::math::expint(1, (s - 1) * std::log(P));
    out.value = static_cast<double>(std::exp(logsum + tail));
    out.tail_error = degree(minpoly) * std::pow(P, 1 - s) / ((s - 1) * std::log(P));
    return out;
}

/// Number of real roots (signature r1); the rest come in conjugate pairs.
inline int real_root_count(const IntPoly& f) {
    const int n = degree(f);
    if (n < 1) return 0;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -static_cast<double>(f[i]) / static_cast<double>(f[n]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    int r = 0;
    for (int i = 0; i < n; ++i)
        if (std::fabs(es.eigenvalues()[i].imag()) < 1e-9 * std::max(1.0, std::abs(es.eigenvalues()[i]))) ++r;
    return r;
}

struct FieldDiscriminant {
    BigInt value;                      // disc(f) divided by the certified index squares
    std::vector<std::int64_t> uncertain;  // primes where the index was not determined
};

/// Field discriminant from the polynomial discriminant; primes whose square divides disc(f)
/// and where Z[x]/(f) is p-maximal contribute fully, the rest are reported.
inline FieldDiscriminant field_discriminant(const IntPoly& f) {
    BigInt disc = polynomial_discriminant(f);
    FieldDiscriminant out{disc, {}};
    BigInt n = disc < 0 ? BigInt(-disc) : disc;
    for (std::int64_t p = 2; BigInt(p) * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e >= 2 && !split_prime(f, p).maximal) out.uncertain.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// Orders of finite groups of Lie type

enum class Family { A, B, C, D, D4Triality, E6, E7, E8, F4, G2 };

struct GroupType {
    Family family;
    int rank;
    int twist = 1;
};

inline std::string to_string(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::D4Triality: return "3D4";
        case Family::E6: return "E6";
        case Family::E7: return "E7";
        case Family::E8: return "E8";
        case Family::F4: return "F4";
        case Family::G2: return "G2";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::D4Triality, Family::E6, Family::E7,
                     Family::E8, Family::F4, Family::G2})
        if (s == to_string(f)) return f;
    throw std::invalid_argument("unknown group family: " + s);
}

/// Integer polynomial with arbitrary-precision coefficients, constant term first.
using BigPoly = std::vector<BigInt>;

namespace detail {

inline BigPoly big_mul(const BigPoly& a, const BigPoly& b) {
    BigPoly c(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// q^e + c
inline BigPoly binom_poly(int e, int c) {
    BigPoly p(e + 1, BigInt(0));
    p[e] += 1;
    p[0] += c;
    return p;
}

inline BigPoly monomial(int e) { return binom_poly(e, 0); }

}  // namespace detail

inline int dim_group(const GroupType& g) {
    const int l = g.rank;
    switch (g.family) {
        case Family::A: return l * (l + 2);
        case Family::B:
        case Family::C: return l * (2 * l + 1);
        case Family::D: return l * (2 * l - 1);
        case Family::D4Triality: return 28;
        case Family::E6: return 78;
        case Family::E7: return 133;
        case Family::E8: return 248;
        case Family::F4: return 52;
        case Family::G2: return 14;
    }
    return 0;
}

/// #G(F_q) as a polynomial in q, for the simply connected group of the given type.
inline BigPoly point_count_polynomial(const GroupType& g) {
    using detail::big_mul;
    using detail::binom_poly;
    using detail::monomial;
    const int l = g.rank;
    auto bad = [&] {
        throw std::invalid_argument("no table row for " + to_string(g.family) + std::to_string(l) + " with twist " +
                                    std::to_string(g.twist));
    };
    BigPoly p;
    auto times = [&](const std::vector<std::pair<int, int>>& factors) {
        for (auto [e, c] : factors) p = big_mul(p, binom_poly(e, c));
    };
    switch (g.family) {
        case Family::A:
            if (l < 1 || (g.twist == 2 && l < 2) || (g.twist != 1 && g.twist != 2)) bad();
            p = monomial(l * (l + 1) / 2);
            for (int k = 1; k <= l; ++k) {
                int c = (g.twist == 2 && (k + 1) % 2 == 1) ? 1 : -1;
                p = big_mul(p, binom_poly(k + 1, c));
            }
            break;
        case Family::B:
        case Family::C:
            if (g.twist != 1 || l < (g.family == Family::B ? 2 : 3)) bad();
            p = monomial(l * l);
            for (int k = 1; k <= l; ++k) p = big_mul(p, binom_poly(2 * k, -1));
            break;
        case Family::D:
            if (l < 4 || (g.twist != 1 && g.twist != 2)) bad();
            p = big_mul(monomial(l * (l - 1)), binom_poly(l, g.twist == 1 ? -1 : 1));
            for (int k = 1; k <= l - 1; ++k) p = big_mul(p, binom_poly(2 * k, -1));
            break;
        case Family::D4Triality:
            if (l != 4 || g.twist != 3) bad();
            // (q^4 - eta)(q^4 - eta-bar) = q^8 + q^4 + 1
            p = big_mul(big_mul(monomial(12), binom_poly(2, -1)), binom_poly(6, -1));
            p = big_mul(p, BigPoly{1, 0, 0, 0, 1, 0, 0, 0, 1});
            break;
        case Family::E6:
            if (l != 6 || (g.twist != 1 && g.twist != 2)) bad();
            p = monomial(36);
            {
                int c = g.twist == 1 ? -1 : 1;
                times({{2, -1}, {5, c}, {6, -1}, {8, -1}, {9, c}, {12, -1}});
            }
            break;
        case Family::E7:
            if (l != 7 || g.twist != 1) bad();
            p = monomial(63);
            times({{2, -1}, {6, -1}, {8, -1}, {10, -1}, {12, -1}, {14, -1}, {18, -1}});
            break;
        case Family::E8:
            if (l != 8 || g.twist != 1) bad();
            p = monomial(120);
            times({{2, -1}, {8, -1}, {12, -1}, {14, -1}, {18, -1}, {20, -1}, {24, -1}, {30, -1}});
            break;
        case Family::F4:
            if (l != 4 || g.twist != 1) bad();
            p = monomial(24);
            times({{2, -1}, {6, -1}, {8, -1}, {12, -1}});
            break;
        case Family::G2:
            if (l != 2 || g.twist != 1) bad();
            p = monomial(6);
            times({{2, -1}, {6, -1}});
            break;
    }
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

/// Every row of the table, for exhaustive checks.
inline std::vector<GroupType> point_count_rows(int max_rank = 8) {
    std::vector<GroupType> rows;
    for (int l = 1; l <= max_rank; ++l) rows.push_back({Family::A, l, 1});
    for (int l = 2; l <= max_rank; ++l) rows.push_back({Family::A, l, 2});
    for (int l = 2; l <= max_rank; ++l) rows.push_back({Family::B, l, 1});
    for (int l = 3; l <= max_rank; ++l) rows.push_back({Family::C, l, 1});
    for (int l = 4; l <= max_rank; ++l) {
        rows.push_back({Family::D, l, 1});
        rows.push_back({Family::D, l, 2});
    }
    rows.push_back({Family::D4Triality, 4, 3});
    rows.push_back({Family::E6, 6, 1});
    rows.push_back({Family::E6, 6, 2});
    rows.push_back({Family::E7, 7, 1});
    rows.push_back({Family::E8, 8, 1});
    rows.push_back({Family::F4, 4, 1});
    rows.push_back({Family::G2, 2, 1});
    return rows;
}

inline bool is_prime_power(std::int64_t q) {
    if (q < 2) return false;
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        while (q % p == 0) q /= p;
        return q == 1;
    }
    return true;
}

inline BigInt point_count(const GroupType& g, std::int64_t q) {
    if (!is_prime_power(q)) throw std::invalid_argument("q must be a prime power");
    auto p = point_count_polynomial(g);
    BigInt r = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) r = r * q + p[i];
    return r;
}

// ---------------------------------------------------------------------------------------
// Covolume classes

enum class CovolumeCase { I, IISplit, IINonsplit, III };

inline CovolumeCase parse_covolume_case(const std::string& s) {
    if (s == "I") return CovolumeCase::I;
    if (s == "II-split") return CovolumeCase::IISplit;
    if (s == "II-nonsplit") return CovolumeCase::IINonsplit;
    if (s == "III") return CovolumeCase::III;
    throw std::invalid_argument("unknown covolume case: " + s);
}

struct CovolumeParams {
    std::int64_t d = 1;   // k = Q(sqrt d); 1 means Q
    int m = 1;            // n = 2m (case I) or 2m - 1 (case II)
    int t = 1;            // number of hyperbolic factors
    IntPoly minpoly_L;    // II-nonsplit: L = Q[x]/(f) quadratic over k; III: the field L
    std::int64_t p_max = 10000;
    std::int64_t terms = 1000000;
};

/// vol ~ pi^{pi_exp} * l_star up to Q^x, where l_star is the leading coefficient of the
/// L-function at 1 - m (or at -1 in case III). `representative` is the same class written with
/// the value at m: pi^{pi_exp} sqrt|d| L(m) / pi^{m deg}; the two differ by pi^{star_pi_offset}
/// times a rational (the offset counts the archimedean Gamma factors with a pole at 1 - m).
struct VolumeClass {
    std::string rational_class = "Q^x";
    int pi_exp = 0;
    std::string l_part;
    double l_star = 1;
    double l_at_m = 1;            // L(m) itself
    double sqrt_disc = 1;         // sqrt|d| of the L-function's conductor, up to squares
    int star_pi_offset = 0;
    double representative = 1;    // pi^{pi_exp} sqrt|d| L(m) / pi^{m deg}
};

namespace detail {

// leading coefficient of Gamma_R(s + a) = pi^{-(s+a)/2} Gamma((s+a)/2) at s = s0
inline double gamma_r_leading(double s0, int a) {
    double z = (s0 + a) / 2;
    double pref = std::pow(std::numbers::pi, -z);
    if (z <= 0 && std::fabs(z - std::round(z)) < 1e-12) {
        int j = static_cast<int>(-std::round(z));
        return pref * 2 * ((j % 2) ? -1.0 : 1.0) / std::tgamma(j + 1.0);
    }
    return pref * gamma_fn(z);
}

// leading coefficient of Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s) at s = s0
inline double gamma_c_leading(double s0) {
    double pref = 2 * std::pow(2 * std::numbers::pi, -s0);
    if (s0 <= 0 && std::fabs(s0 - std::round(s0)) < 1e-12) {
        int j = static_cast<int>(-std::round(s0));
        return pref * ((j % 2) ? -1.0 : 1.0) / std::tgamma(j + 1.0);
    }
    return pref * gamma_fn(s0);
}

// L*(s0) from L(1 - s0) via Lambda(s) = A^{s/2} prod Gamma factors L(s), Lambda(s) = Lambda(1 - s)
inline double leading_from_dual(double l_dual, double s0, double A, const std::vector<int>& real_parity,
                                int complex_places) {
    double s1 = 1 - s0;
    double lam = std::pow(A, s1 / 2) * l_dual;
    double g0 = std::pow(A, s0 / 2);
    for (int a : real_parity) {
        lam *= gamma_r_leading(s1, a);
        g0 *= gamma_r_leading(s0, a);
    }
    for (int i = 0; i < complex_places; ++i) {
        lam *= gamma_c_leading(s1);
        g0 *= gamma_c_leading(s0);
    }
    return lam / g0;
}

inline int pole_count(double s0, const std::vector<int>& real_parity, int complex_places) {
    int c = 0;
    for (int a : real_parity) {
        double z = (s0 + a) / 2;
        if (z <= 0 && std::fabs(z - std::round(z)) < 1e-12) ++c;
    }
    if (s0 <= 0 && std::fabs(s0 - std::round(s0)) < 1e-12) c += complex_places;
    return c;
}

}  // namespace detail

/// Covolume class of an arithmetic group of the given type, in the simplified form
/// pi^{mt} zeta*_k(1-m), pi^{mt} L*(chi, 1-m) or pi^{t + 2 r2} zeta*_L(-1).
inline VolumeClass covolume_class(CovolumeCase c, const CovolumeParams& prm) {
    const double pi = std::numbers::pi;
    const int r = prm.d == 1 ? 1 : 2;
    if (prm.d != 1 && prm.d <= 0) throw std::invalid_argument("covolume_class: k must be totally real");
    if (prm.m < 1) throw std::invalid_argument("covolume_class: m >= 1 required");
    if (prm.t < 0) throw std::invalid_argument("covolume_class: t must be non-negative");
    const std::int64_t dk = prm.d == 1 ? 1 : fundamental_discriminant(prm.d);
    VolumeClass out;
    switch (c) {
        case CovolumeCase::I: {
            if (prm.t < 1 || prm.t > r) throw std::invalid_argument("covolume_class: need 1 <= t <= [k:Q]");
            // even dimension: the zeta values cancel against the discriminant and pi-powers
            out.pi_exp = prm.m * prm.t;
            out.l_part = "1";
            out.representative = std::pow(pi, out.pi_exp);
            return out;
        }
        case CovolumeCase::IISplit: {
            if (prm.t < 1 || prm.t > r) throw std::invalid_argument("covolume_class: need 1 <= t <= [k:Q]");
            const int m = prm.m;
            if (m < 2) throw std::invalid_argument("covolume_class: II needs m >= 2");
            out.pi_exp = m * prm.t;
            out.l_part = std::string(prm.d == 1 ? "zeta" : "zeta_k") + "*(" + std::to_string(1 - m) + ")";
            out.l_at_m = zeta_quad_series(prm.d, m, prm.terms);
            out.sqrt_disc = std::sqrt(static_cast<double>(dk));
            std::vector<int> parity(r, 0);
            out.l_star = detail::leading_from_dual(out.l_at_m, 1 - m, static_cast<double>(dk), parity, 0);
            out.star_pi_offset = detail::pole_count(1 - m, parity, 0);
            out.representative = std::pow(pi, out.pi_exp) * out.sqrt_disc * out.l_at_m / std::pow(pi, m * r);
            return out;
        }
        case CovolumeCase::IINonsplit: {
            if (prm.t < 1 || prm.t > r) throw std::invalid_argument("covolume_class: need 1 <= t <= [k:Q]");
            const int m = prm.m;
            if (m < 2) throw std::invalid_argument("covolume_class: II needs m >= 2");
            const IntPoly& f = prm.minpoly_L;
            if (degree(f) != 2 * r) throw std::invalid_argument("covolume_class: L must be quadratic over k");
            out.pi_exp = m * prm.t;
            out.l_part = "L*(chi," + std::to_string(1 - m) + ")";
            auto zL = dedekind_euler(f, m, prm.p_max);
            double zk = zeta_quad_series(prm.d, m, prm.terms);
            out.l_at_m = zL.value / zk;
            auto dL = field_discriminant(f);
            double dLk_dk = std::fabs(dL.value.convert_to<double>()) / static_cast<double>(dk);
            out.sqrt_disc = std::sqrt(dLk_dk);
            // real places of k that stay real in L give even Gamma factors, the others odd
            int r1L = real_root_count(f);
            std::vector<int> parity;
            for (int i = 0; i < r1L / 2; ++i) parity.push_back(0);
            for (int i = r1L / 2; i < r; ++i) parity.push_back(1);
            out.l_star = detail::leading_from_dual(out.l_at_m, 1 - m, dLk_dk, parity, 0);
            out.star_pi_offset = detail::pole_count(1 - m, parity, 0);
            out.representative = std::pow(pi, out.pi_exp) * out.sqrt_disc * out.l_at_m / std::pow(pi, m * r);
            return out;
        }
        case CovolumeCase::III: {
            const IntPoly& f = prm.minpoly_L;
            const int n = degree(f);
            if (n < 2) throw std::invalid_argument("covolume_class: L must have a complex place");
            const int r1 = real_root_count(f), r2 = (n - r1) / 2;
            if (r2 < 1) throw std::invalid_argument("covolume_class: L must have a complex place");
            if (prm.t > r1) throw std::invalid_argument("covolume_class: need t <= r1");
            out.pi_exp = prm.t + 2 * r2;
            out.l_part = "zeta_L*(-1)";
            auto dL = field_discriminant(f);
            double absd = std::fabs(dL.value.convert_to<double>());
            if (n == 2) {
                std::int64_t D = fundamental_discriminant(dL.value.convert_to<std::int64_t>());
                absd = static_cast<double>(-D);
                out.l_at_m = dirichlet_series(trivial_character(), 2, prm.terms) *
                             dirichlet_series(kronecker_character(D), 2, prm.terms);
            } else {
                out.l_at_m = dedekind_euler(f, 2, prm.p_max).value;
            }
            out.sqrt_disc = std::sqrt(absd);
            std::vector<int> parity(r1, 0);
            out.l_star = detail::leading_from_dual(out.l_at_m, -1, absd, parity, r2);
            out.star_pi_offset = detail::pole_count(-1, parity, r2);
            out.representative = std::pow(pi, out.pi_exp) * out.sqrt_disc * out.l_at_m / std::pow(pi, 2 * n);
            return out;
        }
    }
    throw std::invalid_argument("covolume_class: unknown case");
}

}  // namespace scissors
