#pragma once

#include <string>
#include <vector>

#include "finfree/limit_laws.hpp"
#include "finfree/poly.hpp"

namespace finfree {

// Empirical root distribution: uniform weight 1/d on each (ascending) atom.
class EmpiricalMeasure {
public:
    explicit EmpiricalMeasure(std::vector<double> atoms);
    static EmpiricalMeasure of(const RootSet& roots);
    // Uses the attached roots when present, otherwise roots_of.
    static EmpiricalMeasure of(const Poly& p);

    const std::vector<double>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double weight() const { return 1.0 / static_cast<double>(atoms_.size()); }
    double cdf(double x) const;
    double cdf_left(double x) const;
    // The same measure as a staircase law, for ks_distance between two measures.
    LimitLaw as_law() const;

private:
    std::vector<double> atoms_;
};

// sup_x |F_em(x) - F_law(x)|. Evaluated at each distinct atom v with
// F_em(v-) = i0/d and F_em(v) = i1/d as max(|F_law(v) - i1/d|, |F_law(v-) - i0/d|),
// which covers the gaps between atoms because both CDFs are monotone.
double ks_distance(const EmpiricalMeasure& em, const LimitLaw& law);

struct ExtremeRoots {
    Real largest;
    Real smallest;
};
// From attached roots when present, otherwise by Laguerre's iteration from outside the hull.
ExtremeRoots extreme_roots(const Poly& p);

// G(z) = (1/d) sum_i 1/(z - lambda_i) for real z outside [lambda_d, lambda_1].
Real cauchy_at(const Poly& p, const Real& z);
Real cauchy_at(const RootSet& roots, const Real& z);

// CSV with columns atom,F_emp,F_law for each atom.
std::string cdf_triples_csv(const EmpiricalMeasure& em, const LimitLaw& law);

}  // namespace finfree
