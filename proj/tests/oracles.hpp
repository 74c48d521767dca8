#pragma once
// Independent reference computations for the test suites. Nothing here calls
// into the library's algorithms; the oracles work in exact rationals or with
// closed-form formulas.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "finfree/real.hpp"

namespace oracle {

using Rational = boost::multiprecision::mpq_rational;

// All set partitions of {0..n-1}, each given as its list of block sizes.
// Built recursively: element i joins an existing block or opens a new one.
inline void partitions_rec(int i, int n, std::vector<int>& blocks, std::vector<std::vector<int>>& out) {
    if (i == n) {
        out.push_back(blocks);
        return;
    }
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        ++blocks[j];
        partitions_rec(i + 1, n, blocks, out);
        --blocks[j];
    }
    blocks.push_back(1);
    partitions_rec(i + 1, n, blocks, out);
    blocks.pop_back();
}

inline std::vector<std::vector<int>> set_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> blocks;
    partitions_rec(0, n, blocks, out);
    return out;
}

inline Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Rational binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// Finite free cumulant of order n at degree d from normalized coefficients
// e[0..d], by brute force over all set partitions.
inline Rational cumulant(const std::vector<Rational>& e, int d, int n) {
    Rational sum = 0;
    for (const auto& blocks : set_partitions(n)) {
        int b = static_cast<int>(blocks.size());
        Rational term = factorial(b - 1);
        if ((b - 1) % 2 == 1) term = -term;
        for (int s : blocks) term *= e[static_cast<std::size_t>(s)];
        sum += term;
    }
    Rational pref = 1;
    for (int i = 0; i < n - 1; ++i) pref *= -d;
    return pref / factorial(n - 1) * sum;
}

// Correctly rounded conversion.
inline finfree::Real to_real(const Rational& q, int bits) {
    finfree::Real r(0L, bits);
    mpfr_set_q(r.get(), q.backend().data(), MPFR_RNDN);
    return r;
}

// Monomial coefficients c[0..d] (c[i] multiplies x^i) of a monic
// polynomial with the given roots, in exact rationals.
inline std::vector<Rational> monic_from_roots(const std::vector<Rational>& roots) {
    std::vector<Rational> c{1};
    for (const auto& r : roots) {
        std::vector<Rational> next(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

// Normalized coefficients e~_k = (-1)^k c_{d-k} / C(d,k) of a monic polynomial.
inline std::vector<Rational> normalized(const std::vector<Rational>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<Rational> e;
    for (int k = 0; k <= d; ++k) {
        Rational v = c[static_cast<std::size_t>(d - k)] / binom(d, k);
        e.push_back(k % 2 ? -v : v);
    }
    return e;
}

inline std::vector<Rational> derivative(const std::vector<Rational>& c) {
    std::vector<Rational> out;
    for (std::size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * static_cast<long>(i));
    if (out.empty()) out.push_back(0);
    return out;
}

inline Rational eval(const std::vector<Rational>& c, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Additive convolution of monic degree-d polynomials by the derivative formula
// (1/d!) sum_i p^(i)(x) q^(d-i)(0).
inline std::vector<Rational> boxplus_derivative_formula(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    const int d = static_cast<int>(p.size()) - 1;
    std::vector<std::vector<Rational>> dp{p}, dq{q};
    for (int i = 1; i <= d; ++i) {
        dp.push_back(derivative(dp.back()));
        dq.push_back(derivative(dq.back()));
    }
    std::vector<Rational> out(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i <= d; ++i) {
        Rational w = eval(dq[static_cast<std::size_t>(d - i)], 0);
        const auto& pi = dp[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < pi.size(); ++j) out[j] += w * pi[j];
    }
    for (auto& v : out) v /= factorial(d);
    return out;
}

// Real roots of a x^2 + b x + c in decreasing order (discriminant >= 0),
// using the cancellation-free form.
inline std::vector<double> quadratic_roots(double a, double b, double c) {
    double disc = std::sqrt(b * b - 4 * a * c);
    double q = -0.5 * (b + std::copysign(disc, b));
    double r1 = q / a, r2 = c / q;
    std::vector<double> r{r1, r2};
    std::sort(r.rbegin(), r.rend());
    return r;
}

// Three real roots of x^3 + b x^2 + c x + e by the trigonometric formula,
// in decreasing order.
inline std::vector<double> cubic_roots(double b, double c, double e) {
    double p = c - b * b / 3.0;
    double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + e;
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    double th = std::acos(arg) / 3.0;
    std::vector<double> r;
    for (int k = 0; k < 3; ++k) {
        // the trigonometric form loses digits near acos(+-1); two Newton steps in
        // long double recover them
        long double x = m * std::cos(th - 2.0 * std::numbers::pi * k / 3.0) - b / 3.0;
        for (int it = 0; it < 2; ++it) {
            long double f = ((x + b) * x + c) * x + e, df = (3 * x + 2 * b) * x + c;
            if (df != 0) x -= f / df;
        }
        r.push_back(static_cast<double>(x));
    }
    std::sort(r.rbegin(), r.rend());
    return r;
}

// integral_0^t log(1/(1-x)) dx = (1-t) log(1-t) + t.
inline double log_integral(double t) { return (1.0 - t) * std::log1p(-t) + t; }

// Roots of the degree-2d Chebyshev polynomials of the first and second kind,
// rescaled by the spectral support (the ones produced by the families).
inline std::vector<double> chebyshev_t_nodes(int d2) {
    std::vector<double> r;
    for (int j = 1; j <= d2; ++j) r.push_back(std::cos((2.0 * j - 1.0) * std::numbers::pi / (2.0 * d2)));
    return r;
}

inline std::vector<double> chebyshev_u_nodes(int d2) {
    std::vector<double> r;
    for (int j = 1; j <= d2; ++j) r.push_back(std::cos(j * std::numbers::pi / (d2 + 1.0)));
    return r;
}

}  // namespace oracle
