#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "finfree/poly.hpp"
#include "finfree/real.hpp"

namespace th {

inline constexpr int kBits = 256;

inline finfree::Real R(double v, int bits = kBits) { return finfree::Real(v, bits); }
inline finfree::Real Q(long num, long den, int bits = kBits) {
    return finfree::Real(num, bits) / finfree::Real(den, bits);
}

// |a - b| / max(|b|, tiny) as a double.
inline double rel(const finfree::Real& a, const finfree::Real& b) {
    return finfree::relative_difference(a, b).to_double();
}

inline double absdiff(const finfree::Real& a, const finfree::Real& b) { return finfree::abs(a - b).to_double(); }

inline double max_rel(const std::vector<finfree::Real>& a, const std::vector<finfree::Real>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, rel(a[i], b[i]));
    return m;
}

// 2^(16 - bits): agreement expected from two rounding paths of one exact value.
inline double working_tol(int bits = kBits) { return std::ldexp(1.0, 16 - bits); }

inline std::vector<finfree::Real> uniform_roots(std::mt19937_64& rng, int d, double lo, double hi,
                                                int bits = kBits) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<finfree::Real> r;
    for (int i = 0; i < d; ++i) r.emplace_back(u(rng), bits);
    return r;
}

inline finfree::Poly uniform_poly(std::mt19937_64& rng, int d, double lo, double hi, int bits = kBits) {
    return finfree::from_roots(uniform_roots(rng, d, lo, hi, bits), bits);
}

}  // namespace th
