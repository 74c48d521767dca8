#include "finfree/families.hpp"

#include <string>

#include "finfree/errors.hpp"

namespace finfree {

namespace {

constexpr int kGuardBits = 32;

Real div_to(const Real& a, const Real& b, int bits) {
    Real r(0L, bits);
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

bool is_integer_in(const Real& x, long lo, long hi) {
    if (!(x >= lo && x <= hi)) return false;
    return floor(x) == x;
}

// (-1)^k (2k)_k / (m)_k / 4^k at even index 2k, zero at odd indices.
SymPoly chebyshev_like(int d2, long m_start, int bits, const char* name) {
    if (d2 < 2 || d2 % 2 != 0) throw DomainError(std::string(name) + ": degree must be even and positive");
    const int d = d2 / 2;
    const int work = bits + kGuardBits;
    std::vector<Real> e(static_cast<std::size_t>(d2) + 1, Real(0L, bits));
    e[0] = Real(1L, bits);
    Real num(1L, work), den(1L, work);
    for (int k = 1; k <= d; ++k) {
        // (2k)_k = (2k)! / k! grows by (2k)(2k-1)/k from (2k-2)_(k-1)
        num *= static_cast<long>(2 * k);
        num *= static_cast<long>(2 * k - 1);
        num /= static_cast<long>(k);
        den *= m_start - (k - 1);
        den *= 4L;
        Real v = div_to(num, den, bits);
        if (k % 2 == 1) v = -v;
        e[static_cast<std::size_t>(2 * k)] = std::move(v);
    }
    return SymPoly(Poly(std::move(e), bits));
}

}  // namespace

HGParams HGParams::from_values(int d, const std::vector<Real>& below, const std::vector<Real>& above) {
    std::vector<Real> bd, ad;
    for (const auto& a : below) bd.push_back(a * static_cast<long>(d));
    for (const auto& b : above) ad.push_back(b * static_cast<long>(d));
    return from_scaled(d, std::move(bd), std::move(ad));
}

HGParams HGParams::from_scaled(int d, std::vector<Real> below_times_d, std::vector<Real> above_times_d) {
    if (d < 1) throw DomainError("hypergeometric polynomial needs d >= 1");
    for (const auto& ad : below_times_d) {
        // (a d)_k vanishes for some k <= d exactly when a d is one of 0..d-1
        if (is_integer_in(ad, 0, d - 1))
            throw DomainError("excluded lower parameter a = " + (ad / static_cast<long>(d)).to_string(12) +
                              " (a*d in {0,...,d-1})");
    }
    HGParams p;
    p.d = d;
    p.below_d = std::move(below_times_d);
    p.above_d = std::move(above_times_d);
    return p;
}

std::vector<Real> HGParams::below() const {
    std::vector<Real> out;
    for (const auto& v : below_d) out.push_back(v / static_cast<long>(d));
    return out;
}

std::vector<Real> HGParams::above() const {
    std::vector<Real> out;
    for (const auto& v : above_d) out.push_back(v / static_cast<long>(d));
    return out;
}

Poly hgp(const HGParams& params, int precision_bits) {
    const int d = params.d;
    const int work = precision_bits + kGuardBits;
    const long i = static_cast<long>(params.below_d.size());
    const long j = static_cast<long>(params.above_d.size());
    std::vector<Real> e;
    e.reserve(static_cast<std::size_t>(d) + 1);
    e.emplace_back(1L, precision_bits);
    Real num(1L, work), den(1L, work);
    Real dpow = pow(Real(static_cast<long>(d), work), std::abs(i - j));
    for (int k = 1; k <= d; ++k) {
        for (const auto& b : params.above_d) num *= b - static_cast<long>(k - 1);
        for (const auto& a : params.below_d) den *= a - static_cast<long>(k - 1);
        if (i > j) num *= dpow;
        else if (j > i) den *= dpow;
        e.push_back(div_to(num, den, precision_bits));
    }
    return Poly(std::move(e), precision_bits);
}

std::vector<Real> hgp_s_closed_form(const HGParams& params, int precision_bits) {
    const int d = params.d;
    std::vector<Real> out;
    for (int k = 1; k <= d; ++k) {
        Real v(1L, precision_bits + kGuardBits);
        for (const auto& a : params.below_d) v *= (a - static_cast<long>(k - 1)) / static_cast<long>(d);
        for (const auto& b : params.above_d) v /= (b - static_cast<long>(k - 1)) / static_cast<long>(d);
        out.push_back(v.rounded(precision_bits));
    }
    return out;
}

Poly laguerre(int d, const Real& b, int precision_bits) {
    return hgp(HGParams::from_values(d, {}, {b.rounded(precision_bits + kGuardBits)}), precision_bits);
}

bool laguerre_in_region(int d, const Real& b) { return b > 1L - Real(1L, b.precision()) / static_cast<long>(d); }

Poly bessel(int d, const Real& a, int precision_bits) {
    return reflect(hgp(HGParams::from_values(d, {a.rounded(precision_bits + kGuardBits)}, {}), precision_bits));
}

bool bessel_in_region(const Real& a) { return a < 0L; }

JacobiRegion jacobi_region(const Real& b, const Real& a) {
    if (b > 1L && a > b + 1L) return JacobiRegion::UnitInterval;
    if (b > 1L && a < 0L) return JacobiRegion::PositiveReflected;
    if (a < 0L && b < a - 1L) return JacobiRegion::Positive;
    return JacobiRegion::Outside;
}

Poly jacobi(int d, const Real& b, const Real& a, int precision_bits) {
    const int work = precision_bits + kGuardBits;
    Poly p = hgp(HGParams::from_values(d, {a.rounded(work)}, {b.rounded(work)}), precision_bits);
    return jacobi_region(b, a) == JacobiRegion::PositiveReflected ? reflect(p) : p;
}

Poly bernoulli_poly(int d, int l, const Real& scale, int precision_bits) {
    Poly p = bernoulli_poly(d, l, precision_bits);
    return scale == 1L ? p : dilate(p, scale);
}

Poly bernoulli_poly(int d, int l, int precision_bits) {
    if (l < 0 || l > d) throw DomainError("bernoulli_poly: need 0 <= l <= d");
    const int work = precision_bits + kGuardBits;
    return hgp(HGParams::from_scaled(d, {Real(static_cast<long>(d), work)}, {Real(static_cast<long>(l), work)}),
               precision_bits);
}

Poly f_d(int d, int precision_bits) {
    const int work = precision_bits + kGuardBits;
    return reflect(hgp(HGParams::from_scaled(d, {Real(-1L, work)}, {}), precision_bits));
}

SymPoly hermite(int d2, int precision_bits) {
    if (d2 < 2 || d2 % 2 != 0) throw DomainError("hermite: degree must be even and positive");
    const int d = d2 / 2;
    const int work = precision_bits + kGuardBits;
    std::vector<Real> e(static_cast<std::size_t>(d2) + 1, Real(0L, precision_bits));
    e[0] = Real(1L, precision_bits);
    // (-1)^k (2k)! / (k! (4d)^k)
    Real num(1L, work), den(1L, work);
    for (int k = 1; k <= d; ++k) {
        num *= static_cast<long>(2 * k);
        num *= static_cast<long>(2 * k - 1);
        den *= static_cast<long>(k);
        den *= static_cast<long>(4 * d);
        Real v = div_to(num, den, precision_bits);
        if (k % 2 == 1) v = -v;
        e[static_cast<std::size_t>(2 * k)] = std::move(v);
    }
    return SymPoly(Poly(std::move(e), precision_bits));
}

SymPoly chebyshev_t(int d2, int precision_bits) {
    return chebyshev_like(d2, static_cast<long>(d2 - 1), precision_bits, "chebyshev_t");
}

SymPoly chebyshev_u(int d2, int precision_bits) {
    return chebyshev_like(d2, static_cast<long>(d2), precision_bits, "chebyshev_u");
}

Poly poisson_base(int d, const Real& beta, int precision_bits) {
    if (beta >= 0L && beta <= 1L) throw DomainError("poisson_base: beta must lie outside [0,1]");
    const int work = precision_bits + kGuardBits;
    Real db = beta.rounded(work) * static_cast<long>(d);
    std::vector<Real> e;
    for (int k = 0; k <= d; ++k) e.push_back(div_to(db - static_cast<long>(k), db, precision_bits));
    return Poly(std::move(e), precision_bits);
}

}  // namespace finfree
