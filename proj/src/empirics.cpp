#include "finfree/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finfree/errors.hpp"

namespace finfree {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw DomainError("empirical measure needs at least one atom");
    for (double a : atoms_)
        if (!std::isfinite(a)) throw DomainError("empirical measure: non-finite atom");
    std::sort(atoms_.begin(), atoms_.end());
}

EmpiricalMeasure EmpiricalMeasure::of(const RootSet& roots) { return EmpiricalMeasure(roots.to_doubles()); }

EmpiricalMeasure EmpiricalMeasure::of(const Poly& p) { return of(roots(p)); }

double EmpiricalMeasure::cdf(double x) const {
    return static_cast<double>(std::upper_bound(atoms_.begin(), atoms_.end(), x) - atoms_.begin()) * weight();
}

double EmpiricalMeasure::cdf_left(double x) const {
    return static_cast<double>(std::lower_bound(atoms_.begin(), atoms_.end(), x) - atoms_.begin()) * weight();
}

LimitLaw EmpiricalMeasure::as_law() const { return LimitLaw::staircase(atoms_); }

double ks_distance(const EmpiricalMeasure& em, const LimitLaw& law) {
    if (!law.has_cdf()) throw DomainError("ks_distance: law " + law.name() + " has no CDF");
    const auto& a = em.atoms();
    const double n = static_cast<double>(a.size());
    double ks = 0.0;
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        const double below = static_cast<double>(i) / n;
        const double upto = static_cast<double>(j) / n;
        ks = std::max(ks, std::abs(law.cdf(a[i]) - upto));
        ks = std::max(ks, std::abs(law.cdf_left(a[i]) - below));
        i = j;
    }
    return ks;
}

ExtremeRoots extreme_roots(const Poly& p) {
    if (const RootSet* r = p.known_roots()) return {r->largest(), r->smallest()};
    return {max_root(p), min_root(p)};
}

Real cauchy_at(const RootSet& roots, const Real& z) {
    if (roots.degree() == 0) throw DomainError("cauchy_at: empty root set");
    if (z >= roots.smallest() && z <= roots.largest())
        throw DomainError("cauchy_at: z = " + z.to_string(17) + " lies inside the root hull");
    Real acc(0L, std::max(z.precision(), roots[0].precision()));
    for (const auto& l : roots.roots()) acc += 1L / (z - l);
    return acc / static_cast<long>(roots.degree());
}

Real cauchy_at(const Poly& p, const Real& z) { return cauchy_at(roots(p), z); }

std::string cdf_triples_csv(const EmpiricalMeasure& em, const LimitLaw& law) {
    std::ostringstream os;
    os.precision(17);
    os << "atom,F_emp,F_law\n";
    for (double a : em.atoms()) os << a << "," << em.cdf(a) << "," << law.cdf(a) << "\n";
    return os.str();
}

}  // namespace finfree
