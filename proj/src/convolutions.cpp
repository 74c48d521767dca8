#include "finfree/convolutions.hpp"

#include <algorithm>
#include <string>

#include "finfree/cumulants.hpp"
#include "finfree/errors.hpp"

namespace finfree {

namespace {

constexpr int kGuardBits = 32;

void check_degrees(const Poly& p, const Poly& q, const char* op) {
    if (p.degree() != q.degree())
        throw DomainError(std::string(op) + ": degree mismatch (" + std::to_string(p.degree()) + " vs " +
                          std::to_string(q.degree()) + ")");
}

}  // namespace

Poly boxplus(const Poly& p, const Poly& q) {
    check_degrees(p, q, "boxplus");
    const int d = p.degree();
    const int bits = std::max(p.precision_bits(), q.precision_bits());
    const int work = bits + kGuardBits;
    std::vector<Real> e;
    e.reserve(static_cast<std::size_t>(d) + 1);
    e.emplace_back(1L, bits);
    Real acc(0L, work), binom(0L, work), t(0L, work);
    for (int k = 1; k <= d; ++k) {
        mpfr_set_zero(acc.get(), 1);
        mpfr_set_ui(binom.get(), 1, MPFR_RNDN);
        for (int j = 0; j <= k; ++j) {
            if (j > 0) {
                mpfr_mul_si(binom.get(), binom.get(), k - j + 1, MPFR_RNDN);
                mpfr_div_si(binom.get(), binom.get(), j, MPFR_RNDN);
            }
            mpfr_mul(t.get(), p.coeff(j).get(), q.coeff(k - j).get(), MPFR_RNDN);
            mpfr_mul(t.get(), t.get(), binom.get(), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        }
        e.push_back(acc.rounded(bits));
    }
    return Poly(std::move(e), bits);
}

Poly boxtimes(const Poly& p, const Poly& q) {
    check_degrees(p, q, "boxtimes");
    const int bits = std::max(p.precision_bits(), q.precision_bits());
    std::vector<Real> e;
    e.reserve(p.coeffs().size());
    for (int k = 0; k <= p.degree(); ++k) {
        Real v(0L, bits);
        mpfr_mul(v.get(), p.coeff(k).get(), q.coeff(k).get(), MPFR_RNDN);
        e.push_back(std::move(v));
    }
    return Poly(std::move(e), bits);
}

Poly boxtimes_power(const Poly& p, long n) {
    if (n < 1) throw DomainError("boxtimes_power: n must be at least 1");
    const int bits = p.precision_bits();
    std::vector<Real> e;
    e.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        // MPFR's exponent range absorbs e_k^n for any practical n; underflow is reported
        Real v = pow(c, n);
        if (v.is_zero() && !c.is_zero()) throw DomainError("boxtimes_power: coefficient power underflows");
        e.push_back(std::move(v));
    }
    return Poly(std::move(e), bits);
}

Poly boxplus_fractional(const Poly& p, const Real& t) {
    if (t < 1L) throw DomainError("boxplus_fractional: t must be at least 1");
    const int d = p.degree();
    if (d > kMaxCumulantOrder) {
        // only t = d/j is reachable at this size, and only as a degree-j representative
        throw DomainError("boxplus_fractional: general t needs degree <= 12; use "
                          "boxplus_fractional_via_derivative for t = d/j");
    }
    if (t == 1L) return p;
    CumulantVec kv = cumulants(p, d);
    for (auto& k : kv.kappa) k *= t;
    return from_cumulants(kv, d);
}

Poly boxplus_fractional_via_derivative(const Poly& p, int j) {
    const int d = p.degree();
    if (j < 1 || j > d) throw DomainError("boxplus_fractional_via_derivative: j out of range");
    Real ratio = Real(static_cast<long>(d), p.precision_bits()) / static_cast<long>(j);
    return dilate(diff_kd(p, j), ratio);
}

Poly max_power(const Poly& p, int k) {
    if (k < 1 || k > p.degree()) throw DomainError("max_power: k out of range");
    if (k == p.degree()) return p;
    return from_roots(roots(p).top(k), p.precision_bits());
}

}  // namespace finfree
