#pragma once

#include <string>
#include <vector>

#include "finfree/poly.hpp"

namespace finfree {

enum class TransformKind { S, T, SymS };

const char* to_string(TransformKind kind);

// Sampled finite transform.
//   S:    grid -k/d, values e_(k-1)/e_k for k = 1..d-r.
//   T:    grid (k-1)/d (left breakpoints), values e_(d-k+1)/e_(d-k), 0 for k <= r.
//   SymS: grid -k/d, values m_k > 0 where the transform itself is i*m_k.
struct FiniteTransform {
    TransformKind kind = TransformKind::S;
    int d = 0;
    int r = 0;
    std::vector<Real> grid;
    std::vector<Real> values;

    // Value of the right-continuous T step function at t in (0,1).
    const Real& t_at(double t) const;
    std::string to_csv() const;
    std::string to_json() const;
};

FiniteTransform finite_s(const Poly& p);
FiniteTransform finite_t(const Poly& p);
FiniteTransform finite_s_symmetric(const SymPoly& sp);

// Roots e_k/e_(k-1) for k <= d-r and 0 after.
Poly phi_d(const Poly& p);
// phi_d(p boxtimes f_d).
Poly theta_d(const Poly& p);
// (e_k)^(1/d) evaluated in log space.
Real coeff_geometric_limit(const Poly& p, int k);

// Multiplicity of the root at zero read from exact trailing zero coefficients,
// after checking the coefficient signs that certify nonnegative roots.
int nonnegative_zero_multiplicity(const Poly& p);

}  // namespace finfree
