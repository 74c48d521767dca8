#pragma once

#include <memory>
#include <vector>

#include "finfree/real.hpp"

namespace finfree {

// Real roots sorted non-increasing, with the count of entries that are exactly zero.
class RootSet {
public:
    RootSet() = default;
    // Sorts the values; zeros are recognised by exact equality only.
    explicit RootSet(std::vector<Real> values);
    static RootSet from_doubles(const std::vector<double>& values, int bits);

    int degree() const { return static_cast<int>(roots_.size()); }
    int zero_multiplicity() const { return zeros_; }
    const std::vector<Real>& roots() const { return roots_; }
    const Real& operator[](std::size_t i) const { return roots_[i]; }
    const Real& largest() const { return roots_.front(); }
    const Real& smallest() const { return roots_.back(); }
    std::vector<double> to_doubles() const;
    // Copy of the top k roots.
    RootSet top(int k) const;

private:
    std::vector<Real> roots_;
    int zeros_ = 0;
};

// Monic degree-d polynomial p(x) = sum_k (-1)^k C(d,k) e_k x^(d-k) stored by its
// normalized coefficients e_0 = 1, e_1, ..., e_d.
class Poly {
public:
    // Coefficients are rounded to the requested precision; e_0 must equal 1.
    Poly(std::vector<Real> coeffs, int precision_bits);
    static Poly from_doubles(const std::vector<double>& coeffs, int precision_bits);

    int degree() const { return static_cast<int>(e_.size()) - 1; }
    int precision_bits() const { return bits_; }
    const std::vector<Real>& coeffs() const { return e_; }
    const Real& coeff(int k) const { return e_[static_cast<std::size_t>(k)]; }

    // True for x^d.
    bool is_monomial() const;
    // Number of trailing coefficients that are exactly zero, which is the
    // multiplicity of the root at 0.
    int trailing_zeros() const;

    // Roots attached at construction from a RootSet, or null.
    const RootSet* known_roots() const { return roots_.get(); }
    Poly with_known_roots(RootSet roots) const;
    Poly without_known_roots() const;

    // a_k = (-1)^k C(d,k) e_k so that p(x) = sum_k a_k x^(d-k).
    std::vector<Real> monomial_coeffs() const;
    Real evaluate(const Real& x) const;
    Poly rounded(int bits) const;

private:
    std::vector<Real> e_;
    int bits_;
    std::shared_ptr<const RootSet> roots_;
};

// Polynomial of degree 2d symmetric about the origin.
class SymPoly {
public:
    explicit SymPoly(Poly inner);
    int half_degree() const { return inner_.degree() / 2; }
    const Poly& inner() const { return inner_; }
    // Degree d polynomial whose roots are the squares of the nonnegative roots.
    Poly square() const;

private:
    Poly inner_;
};

Poly from_roots(const RootSet& roots, int precision_bits);
Poly from_roots(const std::vector<Real>& roots, int precision_bits);

// Relative residual bound used throughout: 2^(32 - precision_bits).
Real default_root_tolerance(int precision_bits);
// |p(x)| <= tol * sum_k |a_k| |x|^(d-k) for every returned root.
RootSet roots_of(const Poly& p, const Real& tol);
RootSet roots_of(const Poly& p);
// Known roots when present, otherwise roots_of.
RootSet roots(const Poly& p);

// Largest and smallest roots of a real-rooted p by Laguerre's iteration started
// outside the root hull. Linear cost per step.
Real max_root(const Poly& p);
Real min_root(const Poly& p);

// Roots times c.
Poly dilate(const Poly& p, const Real& c);
// Roots plus c.
Poly shift(const Poly& p, const Real& c);
// Roots raised to the power c; roots must be nonnegative.
Poly power_map(const Poly& p, const Real& c);
// Reciprocal roots; requires all roots strictly positive.
Poly reverse(const Poly& p);
// Negated roots.
Poly reflect(const Poly& p);
// Normalized (d-k)-fold derivative: keeps e_0..e_k.
Poly diff_kd(const Poly& p, int k);

// Alternating signs of the raw coefficients, i.e. e_k >= 0 for all k. For a
// real-rooted p this is equivalent to all roots being nonnegative.
bool has_nonnegative_coeffs(const Poly& p);

// lambda_i(p) <= lambda_i(q) + tol for all i.
bool leq_order(const Poly& p, const Poly& q, double tol = 1e-10);
bool leq_order(const RootSet& p, const RootSet& q, double tol = 1e-10);
// q interlaces p: lambda_d(p) <= lambda_d(q) <= lambda_{d-1}(p) <= ... <= lambda_1(q).
bool interlaces(const Poly& p, const Poly& q, bool strict, double tol = 1e-10);
bool interlaces(const RootSet& p, const RootSet& q, bool strict, double tol = 1e-10);

}  // namespace finfree
