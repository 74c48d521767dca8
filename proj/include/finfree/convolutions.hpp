#pragma once

#include "finfree/poly.hpp"

namespace finfree {

// e_k(p boxplus q) = sum_j C(k,j) e_j(p) e_(k-j)(q).
Poly boxplus(const Poly& p, const Poly& q);
// e_k(p boxtimes q) = e_k(p) e_k(q).
Poly boxtimes(const Poly& p, const Poly& q);
// n-fold boxtimes power: e_k <- e_k^n.
Poly boxtimes_power(const Poly& p, long n);

// p^(boxplus t) for t >= 1 through kappa_n <- t kappa_n; degree at most 12.
Poly boxplus_fractional(const Poly& p, const Real& t);
// Degree-j representative of p^(boxplus d/j) for any degree: Dil_(d/j) D_(j,d) p,
// whose degree-j cumulants equal (d/j) kappa_n^(d)(p) for n <= j.
Poly boxplus_fractional_via_derivative(const Poly& p, int j);

// Degree-k polynomial with the k largest roots of p.
Poly max_power(const Poly& p, int k);

}  // namespace finfree
