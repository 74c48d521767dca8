#pragma once

#include <vector>

#include "finfree/poly.hpp"

namespace finfree {

// Hypergeometric polynomial parameters. The lower parameters a_r and upper
// parameters b_s are stored pre-multiplied by d, which keeps integer-offset
// values such as b = l/d exact.
struct HGParams {
    int d = 0;
    std::vector<Real> below_d;  // a_r * d
    std::vector<Real> above_d;  // b_s * d

    static HGParams from_values(int d, const std::vector<Real>& below, const std::vector<Real>& above);
    static HGParams from_scaled(int d, std::vector<Real> below_times_d, std::vector<Real> above_times_d);
    std::vector<Real> below() const;
    std::vector<Real> above() const;
};

// e_k = d^(k(i-j)) prod_s (b_s d)_k / prod_r (a_r d)_k with falling factorials.
Poly hgp(const HGParams& params, int precision_bits);
// Closed form S(-k/d) = prod_r (a_r - (k-1)/d) / prod_s (b_s - (k-1)/d), k = 1..d.
std::vector<Real> hgp_s_closed_form(const HGParams& params, int precision_bits);

// Upper parameter b; positive roots when b > 1 - 1/d.
Poly laguerre(int d, const Real& b, int precision_bits);
bool laguerre_in_region(int d, const Real& b);
// Lower parameter a (a < 0), reflected to x -> -x so roots are positive.
Poly bessel(int d, const Real& a, int precision_bits);
bool bessel_in_region(const Real& a);

enum class JacobiRegion { UnitInterval, PositiveReflected, Positive, Outside };
// Region where HGP with upper b and lower a has nonnegative roots:
// b > 1, a > b + 1 (roots in [0,1]); b > 1, a < 0 (after x -> -x); a < 0, b < a - 1.
JacobiRegion jacobi_region(const Real& b, const Real& a);
// Upper b, lower a; reflected in the PositiveReflected region.
Poly jacobi(int d, const Real& b, const Real& a, int precision_bits);

// x^(d-l) (x-a)^l.
Poly bernoulli_poly(int d, int l, const Real& scale, int precision_bits);
Poly bernoulli_poly(int d, int l, int precision_bits);
// Reversed standard Laguerre: e_k = d^k / k!, finite S = k/d.
Poly f_d(int d, int precision_bits);

// Normalized Hermite, Chebyshev first and second kind of even degree d2.
SymPoly hermite(int d2, int precision_bits);
SymPoly chebyshev_t(int d2, int precision_bits);
SymPoly chebyshev_u(int d2, int precision_bits);

// (x - (beta-1)/beta)(x-1)^(d-1); e_k = (d beta - k)/(d beta).
Poly poisson_base(int d, const Real& beta, int precision_bits);

}  // namespace finfree
