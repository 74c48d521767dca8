#include "finfree/poly.hpp"

#include <algorithm>
#include <string>

#include "finfree/errors.hpp"

namespace finfree {

namespace {

constexpr int kGuardBits = 32;

// a / b correctly rounded into a fresh value of the given precision.
Real div_to(const Real& a, const Real& b, int bits) {
    Real r(0L, bits);
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

}  // namespace

RootSet::RootSet(std::vector<Real> values) : roots_(std::move(values)) {
    for (const auto& v : roots_)
        if (!v.is_finite()) throw DomainError("root set contains a non-finite value");
    std::stable_sort(roots_.begin(), roots_.end(), [](const Real& a, const Real& b) { return b < a; });
    zeros_ = static_cast<int>(std::count_if(roots_.begin(), roots_.end(), [](const Real& v) { return v.is_zero(); }));
}

RootSet RootSet::from_doubles(const std::vector<double>& values, int bits) {
    std::vector<Real> v;
    v.reserve(values.size());
    for (double x : values) v.emplace_back(x, bits);
    return RootSet(std::move(v));
}

std::vector<double> RootSet::to_doubles() const {
    std::vector<double> out;
    out.reserve(roots_.size());
    for (const auto& r : roots_) out.push_back(r.to_double());
    return out;
}

RootSet RootSet::top(int k) const {
    if (k < 1 || k > degree()) throw DomainError("top: k out of range");
    return RootSet(std::vector<Real>(roots_.begin(), roots_.begin() + k));
}

Poly::Poly(std::vector<Real> coeffs, int precision_bits) : e_(std::move(coeffs)), bits_(precision_bits) {
    if (e_.size() < 2) throw DomainError("polynomial degree must be at least 1");
    if (!(e_[0] == 1L)) throw DomainError("leading normalized coefficient must be exactly 1");
    for (auto& c : e_) {
        if (!c.is_finite()) throw DomainError("non-finite coefficient");
        if (c.precision() != bits_) c = c.rounded(bits_);
    }
}

Poly Poly::from_doubles(const std::vector<double>& coeffs, int precision_bits) {
    std::vector<Real> e;
    e.reserve(coeffs.size());
    for (double c : coeffs) e.emplace_back(c, precision_bits);
    return Poly(std::move(e), precision_bits);
}

bool Poly::is_monomial() const {
    return std::all_of(e_.begin() + 1, e_.end(), [](const Real& c) { return c.is_zero(); });
}

int Poly::trailing_zeros() const {
    int r = 0;
    for (int k = degree(); k >= 1 && e_[static_cast<std::size_t>(k)].is_zero(); --k) ++r;
    return r;
}

Poly Poly::with_known_roots(RootSet roots) const {
    if (roots.degree() != degree()) throw DomainError("root count does not match degree");
    Poly out(*this);
    out.roots_ = std::make_shared<const RootSet>(std::move(roots));
    return out;
}

Poly Poly::without_known_roots() const {
    Poly out(*this);
    out.roots_.reset();
    return out;
}

std::vector<Real> Poly::monomial_coeffs() const {
    const int d = degree();
    std::vector<Real> a;
    a.reserve(e_.size());
    Real binom(1L, bits_ + kGuardBits);
    for (int k = 0; k <= d; ++k) {
        if (k > 0) {
            binom *= static_cast<long>(d - k + 1);
            binom /= static_cast<long>(k);
        }
        Real v(0L, bits_);
        mpfr_mul(v.get(), binom.get(), e_[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
        if (k % 2 == 1) mpfr_neg(v.get(), v.get(), MPFR_RNDN);
        a.push_back(std::move(v));
    }
    return a;
}

Real Poly::evaluate(const Real& x) const {
    auto a = monomial_coeffs();
    Real acc(1L, std::max(bits_, x.precision()));
    for (std::size_t k = 1; k < a.size(); ++k) {
        acc *= x;
        acc += a[k];
    }
    return acc;
}

Poly Poly::rounded(int bits) const {
    std::vector<Real> e;
    e.reserve(e_.size());
    for (const auto& c : e_) e.push_back(c.rounded(bits));
    Poly out(std::move(e), bits);
    if (roots_) {
        std::vector<Real> r;
        for (const auto& v : roots_->roots()) r.push_back(v.rounded(bits));
        out.roots_ = std::make_shared<const RootSet>(RootSet(std::move(r)));
    }
    return out;
}

SymPoly::SymPoly(Poly inner) : inner_(std::move(inner)) {
    const int n = inner_.degree();
    if (n % 2 != 0) throw DomainError("symmetric polynomial must have even degree");
    Real tol = Real::exp2i(16 - inner_.precision_bits(), inner_.precision_bits());
    std::vector<Real> e = inner_.coeffs();
    for (int k = 1; k <= n; k += 2) {
        if (abs(e[static_cast<std::size_t>(k)]) > tol)
            throw DomainError("symmetry violation: odd coefficient e_" + std::to_string(k) + " = " +
                              e[static_cast<std::size_t>(k)].to_string(6));
        e[static_cast<std::size_t>(k)] = Real(0L, inner_.precision_bits());
    }
    const RootSet* known = inner_.known_roots();
    Poly cleaned(std::move(e), inner_.precision_bits());
    inner_ = known ? cleaned.with_known_roots(*known) : cleaned;
}

Poly SymPoly::square() const {
    const int d = half_degree();
    const int bits = inner_.precision_bits();
    std::vector<Real> e;
    e.reserve(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        Real v = binomial(2L * d, 2L * k, bits + kGuardBits) * inner_.coeff(2 * k);
        v = div_to(v, binomial(d, k, bits + kGuardBits), bits);
        if (k % 2 == 1) v = -v;
        e.push_back(std::move(v));
    }
    return Poly(std::move(e), bits);
}

namespace {

// Unnormalized elementary symmetric functions e_0..e_d over growing prefixes.
std::vector<Real> elementary(const std::vector<Real>& lam, int bits, bool absolute) {
    const std::size_t d = lam.size();
    std::vector<Real> e(d + 1, Real(0L, bits));
    e[0] = Real(1L, bits);
    Real t(0L, bits), x(0L, bits);
    for (std::size_t j = 0; j < d; ++j) {
        mpfr_set(x.get(), lam[j].get(), MPFR_RNDN);
        if (absolute) mpfr_abs(x.get(), x.get(), MPFR_RNDN);
        for (std::size_t k = j + 1; k >= 1; --k) {
            mpfr_mul(t.get(), x.get(), e[k - 1].get(), MPFR_RNDN);
            mpfr_add(e[k].get(), e[k].get(), t.get(), MPFR_RNDN);
        }
    }
    return e;
}

}  // namespace

Poly from_roots(const RootSet& roots, int precision_bits) {
    const int d = roots.degree();
    if (d < 1) throw DomainError("from_roots: degree 0 input");
    // Mixed signs cancel; the loss at e_k is about log2(e_k(|lambda|) / |e_k|), so
    // guard bits are raised until every coefficient keeps the working precision.
    const std::vector<Real> abs_e = elementary(roots.roots(), 64, true);
    int work = precision_bits + kGuardBits;
    std::vector<Real> e;
    for (;;) {
        e = elementary(roots.roots(), work, false);
        long loss = 0;
        for (int k = 1; k <= d; ++k) {
            const Real& ek = e[static_cast<std::size_t>(k)];
            if (ek.is_zero()) continue;
            loss = std::max(loss, abs_e[static_cast<std::size_t>(k)].exponent() - ek.exponent() + 1);
        }
        if (loss + 16 <= work - precision_bits || work >= 8 * precision_bits) break;
        work = std::min(8 * precision_bits, precision_bits + static_cast<int>(loss) + kGuardBits);
    }
    std::vector<Real> en;
    en.reserve(e.size());
    en.emplace_back(1L, precision_bits);
    for (int k = 1; k <= d; ++k)
        en.push_back(div_to(e[static_cast<std::size_t>(k)], binomial(d, k, work), precision_bits));
    std::vector<Real> kept;
    kept.reserve(static_cast<std::size_t>(d));
    for (const auto& v : roots.roots()) kept.push_back(v.rounded(precision_bits));
    return Poly(std::move(en), precision_bits).with_known_roots(RootSet(std::move(kept)));
}

Poly from_roots(const std::vector<Real>& roots, int precision_bits) {
    return from_roots(RootSet(roots), precision_bits);
}

RootSet roots(const Poly& p) {
    if (const RootSet* r = p.known_roots()) return *r;
    return roots_of(p);
}

Poly dilate(const Poly& p, const Real& c) {
    if (c.is_zero()) throw DomainError("dilate: factor must be nonzero");
    const int bits = p.precision_bits();
    std::vector<Real> e = p.coeffs();
    Real ck(1L, bits + kGuardBits);
    for (std::size_t k = 1; k < e.size(); ++k) {
        ck *= c;
        Real v(0L, bits);
        mpfr_mul(v.get(), e[k].get(), ck.get(), MPFR_RNDN);
        e[k] = std::move(v);
    }
    Poly out(std::move(e), bits);
    if (const RootSet* r = p.known_roots()) {
        std::vector<Real> moved;
        for (const auto& v : r->roots()) moved.push_back((v * c).rounded(bits));
        return out.with_known_roots(RootSet(std::move(moved)));
    }
    return out;
}

Poly shift(const Poly& p, const Real& c) {
    // e_k(p boxplus (x - c)^d) = sum_j C(k,j) e_j(p) c^(k-j)
    const int d = p.degree();
    const int bits = p.precision_bits();
    const int work = bits + kGuardBits;
    std::vector<Real> cpow(static_cast<std::size_t>(d) + 1, Real(1L, work));
    for (int k = 1; k <= d; ++k) cpow[static_cast<std::size_t>(k)] = cpow[static_cast<std::size_t>(k - 1)] * c;
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
            mpfr_mul(t.get(), binom.get(), p.coeff(j).get(), MPFR_RNDN);
            mpfr_mul(t.get(), t.get(), cpow[static_cast<std::size_t>(k - j)].get(), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        }
        e.push_back(acc.rounded(bits));
    }
    Poly out(std::move(e), bits);
    if (const RootSet* r = p.known_roots()) {
        std::vector<Real> moved;
        for (const auto& v : r->roots()) moved.push_back((v + c).rounded(bits));
        return out.with_known_roots(RootSet(std::move(moved)));
    }
    return out;
}

Poly power_map(const Poly& p, const Real& c) {
    if (!(c > 0L)) throw DomainError("power_map: exponent must be positive");
    if (!has_nonnegative_coeffs(p)) throw NegativeRootError("power_map: negative root detected");
    RootSet r = roots(p);
    std::vector<Real> moved;
    for (const auto& v : r.roots()) {
        if (v < 0L) throw NegativeRootError("power_map: negative root " + v.to_string(8));
        moved.push_back(v.is_zero() ? v : pow(v, c));
    }
    return from_roots(RootSet(std::move(moved)), p.precision_bits());
}

Poly reverse(const Poly& p) {
    const int d = p.degree();
    const Real& ed = p.coeff(d);
    if (!(ed > 0L)) throw DomainError("reverse: root at or below zero");
    const int bits = p.precision_bits();
    std::vector<Real> e;
    e.reserve(static_cast<std::size_t>(d) + 1);
    e.emplace_back(1L, bits);
    for (int k = 1; k <= d; ++k) e.push_back(div_to(p.coeff(d - k), ed, bits));
    Poly out(std::move(e), bits);
    if (const RootSet* r = p.known_roots()) {
        std::vector<Real> inv;
        for (const auto& v : r->roots()) inv.push_back(div_to(Real(1L, bits), v, bits));
        return out.with_known_roots(RootSet(std::move(inv)));
    }
    return out;
}

Poly reflect(const Poly& p) {
    std::vector<Real> e = p.coeffs();
    for (std::size_t k = 1; k < e.size(); k += 2) e[k] = -e[k];
    Poly out(std::move(e), p.precision_bits());
    if (const RootSet* r = p.known_roots()) {
        std::vector<Real> neg;
        for (const auto& v : r->roots()) neg.push_back(-v);
        return out.with_known_roots(RootSet(std::move(neg)));
    }
    return out;
}

Poly diff_kd(const Poly& p, int k) {
    if (k < 1 || k > p.degree())
        throw DomainError("diff_kd: k = " + std::to_string(k) + " outside [1, " + std::to_string(p.degree()) + "]");
    if (k == p.degree()) return p;
    std::vector<Real> e(p.coeffs().begin(), p.coeffs().begin() + k + 1);
    return Poly(std::move(e), p.precision_bits());
}

bool has_nonnegative_coeffs(const Poly& p) {
    return std::none_of(p.coeffs().begin(), p.coeffs().end(), [](const Real& c) { return c < 0L; });
}

bool leq_order(const RootSet& p, const RootSet& q, double tol) {
    if (p.degree() != q.degree()) throw DomainError("leq_order: degree mismatch");
    for (int i = 0; i < p.degree(); ++i)
        if ((p[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i)]).to_double() > tol) return false;
    return true;
}

bool leq_order(const Poly& p, const Poly& q, double tol) {
    if (p.degree() != q.degree()) throw DomainError("leq_order: degree mismatch");
    return leq_order(roots(p), roots(q), tol);
}

bool interlaces(const RootSet& p, const RootSet& q, bool strict, double tol) {
    if (p.degree() != q.degree()) throw DomainError("interlaces: degree mismatch");
    const int d = p.degree();
    auto below = [&](const Real& a, const Real& b) {
        double gap = (b - a).to_double();
        return strict ? gap > tol : gap >= -tol;
    };
    for (int i = 0; i < d; ++i) {
        const auto u = static_cast<std::size_t>(i);
        if (!below(p[u], q[u])) return false;
        if (i + 1 < d && !below(q[u + 1], p[u])) return false;
    }
    return true;
}

bool interlaces(const Poly& p, const Poly& q, bool strict, double tol) {
    if (p.degree() != q.degree()) throw DomainError("interlaces: degree mismatch");
    return interlaces(roots(p), roots(q), strict, tol);
}

}  // namespace finfree
