#pragma once

// Exact arithmetic in Q and in real quadratic fields Q(sqrt d).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scissors {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(num, den);
}

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

/// Parses "p", "-p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

inline bool is_squarefree(std::int64_t d) {
    if (d < 2) return false;
    for (std::int64_t p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

/// Rational square root if q is a perfect square of a rational.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    if (q.sign() == 0) return Rational(0);
    BigInt n = num(q), d = den(q);
    BigInt rn = boost::multiprecision::sqrt(n);
    BigInt rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return make_rational(rn, rd);
}

/// Element a + b*sqrt(d). d == 1 marks the rational subfield (b must be 0);
/// such elements combine with any quadratic context.
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(Rational a) : a_(std::move(a)) {}  // NOLINT: rationals embed implicitly
    QuadElem(int a) : a_(a) {}                  // NOLINT
    QuadElem(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d_ == 1) {
            if (b_ != 0) throw std::domain_error("QuadElem: sqrt(1) context cannot carry b != 0");
        } else if (!is_squarefree(d_)) {
            throw std::domain_error("QuadElem: d must be squarefree and > 1");
        }
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    std::int64_t d() const { return d_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
        auto d = common_d(x, y);
        return raw(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) {
        auto d = common_d(x, y);
        return raw(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        auto d = common_d(x, y);
        return raw(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inverse(); }
    QuadElem operator-() const { return raw(-a_, -b_, d_); }
    QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
    QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
    QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }
    QuadElem& operator/=(const QuadElem& y) { return *this = *this / y; }

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_) return false;
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// Field norm a^2 - d b^2.
    Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

    QuadElem inverse() const {
        Rational n = norm();
        if (n == 0) throw std::domain_error("QuadElem: inverse of zero");
        return raw(a_ / n, -b_ / n, d_);
    }

    QuadElem conj() const { return raw(a_, -b_, d_); }

    /// Real embedding: place 1 sends sqrt(d) to the positive root, place 2 to the negative.
    double embed(int place = 1) const {
        check_place(place);
        double s = std::sqrt(static_cast<double>(d_));
        double b = to_double(b_);
        return to_double(a_) + (place == 1 ? b : -b) * s;
    }

    /// Exact sign of the embedding, no floating point.
    int sign(int place = 1) const {
        check_place(place);
        int sa = a_.sign();
        int sb = place == 1 ? b_.sign() : -b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against b^2 d
        int cmp = Rational(a_ * a_).compare(Rational(b_ * b_ * d_));
        if (cmp == 0) return 0;
        return cmp > 0 ? sa : sb;
    }

    /// Square root inside the field, if one exists.
    std::optional<QuadElem> sqrt_in_field() const {
        if (b_ == 0) {
            if (auto r = rational_sqrt(a_)) return QuadElem(*r, 0, d_);
            if (d_ > 1 && a_.sign() > 0) {
                // a = d * s^2  =>  sqrt(a) = s sqrt(d)
                if (auto s = rational_sqrt(a_ / d_)) return QuadElem(0, *s, d_);
            }
            return std::nullopt;
        }
        // (x + y sqrt d)^2 = a + b sqrt d with y != 0:
        //   x^2 + d y^2 = a, 2 x y = b  =>  x^2 = (a +- sqrt(norm)) / 2
        auto rn = rational_sqrt(norm());
        if (!rn) return std::nullopt;
        for (int s : {1, -1}) {
            Rational x2 = (a_ + s * *rn) / 2;
            if (auto x = rational_sqrt(x2); x && *x != 0) {
                Rational y = b_ / (2 * *x);
                return QuadElem(*x, y, d_);
            }
        }
        return std::nullopt;
    }

    /// Serialization 4-tuple [a_num, a_den, b_num, b_den]; d lives in the enclosing document.
    std::vector<std::string> to_tuple() const {
        return {num(a_).str(), den(a_).str(), num(b_).str(), den(b_).str()};
    }
    static QuadElem from_tuple(const std::vector<std::string>& t, std::int64_t d) {
        if (t.size() != 4) throw std::invalid_argument("QuadElem tuple needs 4 entries");
        Rational a = make_rational(BigInt(t[0]), BigInt(t[1]));
        Rational b = make_rational(BigInt(t[2]), BigInt(t[3]));
        if (b == 0) return QuadElem(a, 0, d);
        return QuadElem(a, b, d);
    }

    std::string str() const {
        if (b_ == 0) return to_string(a_);
        return to_string(a_) + " + " + to_string(b_) + "*sqrt(" + std::to_string(d_) + ")";
    }

private:
    static QuadElem raw(Rational a, Rational b, std::int64_t d) {
        QuadElem r;
        r.a_ = std::move(a);
        r.b_ = std::move(b);
        r.d_ = d;
        return r;
    }
    static std::int64_t common_d(const QuadElem& x, const QuadElem& y) {
        if (x.d_ == 1) return y.d_;
        if (y.d_ == 1 || x.d_ == y.d_) return x.d_;
        throw std::domain_error("QuadElem: mixed fields Q(sqrt " + std::to_string(x.d_) +
                                ") and Q(sqrt " + std::to_string(y.d_) + ")");
    }
    static void check_place(int place) {
        if (place != 1 && place != 2) throw std::invalid_argument("place must be 1 or 2");
    }

    Rational a_{0};
    Rational b_{0};
    std::int64_t d_{1};
};

/// Golden ratio (1 + sqrt 5)/2 in Q(sqrt 5).
inline QuadElem golden_ratio() { return QuadElem(Rational(1, 2), Rational(1, 2), 5); }

/// Best rational approximation with denominator <= max_den and |x - p/q| <= tol, by continued
/// fraction convergents. Returns the qualifying convergent with the smallest denominator.
inline std::optional<Rational> recognize_rational(double x, std::int64_t max_den, double tol) {
    if (max_den < 1 || !(tol >= 0) || !std::isfinite(x)) return std::nullopt;
    // h_{k} = a_k h_{k-1} + h_{k-2}
    BigInt h_prev = 1, h_prev2 = 0;
    BigInt k_prev = 0, k_prev2 = 1;
    long double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        long double fl = std::floor(rem);
        BigInt a = BigInt(static_cast<long long>(fl));
        BigInt h = a * h_prev + h_prev2;
        BigInt k = a * k_prev + k_prev2;
        if (k > max_den) break;
        Rational cand = make_rational(h, k);
        if (std::fabs(x - to_double(cand)) <= tol) return cand;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        long double frac = rem - fl;
        if (frac == 0) break;
        rem = 1.0L / frac;
        if (!std::isfinite(static_cast<double>(rem)) || std::fabs(static_cast<double>(rem)) > 1e18)
            break;
    }
    return std::nullopt;
}

}  // namespace scissors
