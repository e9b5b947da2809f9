#pragma once

// Bloch-Wigner dilogarithm, Lobachevsky function and the weight <= 2 single-valued polylogs.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace scissors {

namespace detail {

// c_n = B_n / (n+1)! for the series Li2(z) = sum_n c_n u^{n+1}, u = -log(1-z).
inline const std::array<double, 40>& li2_bernoulli_coeffs() {
    static const std::array<double, 40> c = [] {
        std::array<double, 40> B{};
        // Bernoulli numbers via the standard recursion, B_1 = -1/2.
        B[0] = 1.0;
        for (int n = 1; n < 40; ++n) {
            double s = 0, binom = 1;  // binom = C(n+1, k)
            for (int k = 0; k < n; ++k) {
                s += binom * B[k];
                binom = binom * (n + 1 - k) / (k + 1);
            }
            B[n] = -s / (n + 1);
        }
        std::array<double, 40> out{};
        double fact = 1;
        for (int n = 0; n < 40; ++n) {
            fact *= (n + 1);
            out[n] = B[n] / fact;
        }
        return out;
    }();
    return c;
}

// Li2 for |z| <= 1, Re z <= 1/2, where |log(1-z)| <= pi/3.
inline std::complex<double> li2_core(std::complex<double> z) {
    const auto& c = li2_bernoulli_coeffs();
    std::complex<double> u = -std::log(1.0 - z);
    std::complex<double> u2 = u * u;
    std::complex<double> sum = u - u2 / 4.0;
    std::complex<double> p = u;  // u^{n+1} for even n
    for (int n = 2; n < 40; n += 2) {
        p *= u2;
        std::complex<double> term = c[n] * p;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace detail

/// Principal branch of the dilogarithm.
inline std::complex<double> li2(std::complex<double> z) {
    using C = std::complex<double>;
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
    if (z == C(0)) return 0;
    if (z == C(1)) return pi2_6;
    if (std::abs(z) > 1) {
        C l = std::log(-z);
        return -li2(1.0 / z) - pi2_6 - 0.5 * l * l;
    }
    if (z.real() > 0.5) return -li2(1.0 - z) + pi2_6 - std::log(z) * std::log(1.0 - z);
    return detail::li2_core(z);
}

/// D(z) = Im Li2(z) + arg(1 - z) log|z|, extended by 0 at 0, 1 and infinity.
inline double bloch_wigner(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return 0.0;
    if (std::abs(z) == 0.0 || z == std::complex<double>(1.0, 0.0)) return 0.0;
    double sign = 1;
    // D(1/z) = D(1-z) = -D(z): fold into |z| <= 1, Re z <= 1/2.
    for (int k = 0; k < 4; ++k) {
        if (std::abs(z) > 1) {
            z = 1.0 / z;
            sign = -sign;
        } else if (z.real() > 0.5) {
            z = 1.0 - z;
            sign = -sign;
        } else {
            break;
        }
    }
    if (z.imag() == 0.0) return 0.0;
    std::complex<double> l = detail::li2_core(z);
    return sign * (l.imag() + std::arg(1.0 - z) * std::log(std::abs(z)));
}

/// Lobachevsky function Л(x) = -int_0^x log|2 sin t| dt = D(e^{2ix}) / 2.
inline double lobachevsky(double x) { return 0.5 * bloch_wigner(std::polar(1.0, 2 * x)); }

/// Single-valued polylogs L_w for words over {x0, x1} of length <= 2, normalized by
/// L_{x0^n} = log^n|z|^2 / n!, L_{x1^n} = (-log|1-z|^2)^n / n!, L_{x0x1} = 2i D(z) - 2 log|z| log|1-z|
/// and the shuffle relation L_{x0} L_{x1} = L_{x0x1} + L_{x1x0}.
inline std::complex<double> sv_polylog(const std::string& word, std::complex<double> z) {
    if (std::abs(z) == 0.0 || std::abs(1.0 - z) == 0.0 || !std::isfinite(std::abs(z)))
        throw std::domain_error("sv_polylog: singular point");
    double l0 = std::log(std::norm(z));          // log|z|^2
    double l1 = -std::log(std::norm(1.0 - z));   // -log|1-z|^2
    double a = std::log(std::abs(z)), b = std::log(std::abs(1.0 - z));
    std::complex<double> l01(-2 * a * b, 2 * bloch_wigner(z));
    if (word.empty()) return 1.0;
    if (word == "x0") return l0;
    if (word == "x1") return l1;
    if (word == "x0x0") return 0.5 * l0 * l0;
    if (word == "x1x1") return 0.5 * l1 * l1;
    if (word == "x0x1") return l01;
    if (word == "x1x0") return l0 * l1 - l01;
    throw std::invalid_argument("sv_polylog: unsupported word " + word);
}

}  // namespace scissors
