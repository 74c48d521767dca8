#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace finfree {

enum class LawKind {
    MP,                // Marchenko-Pastur with rate b
    ReversedMP,        // law of 1/X for X ~ MP(1-a), a <= 0
    Semicircle,        // standard, on [-2,2]
    Arcsine,           // on (-1,1)
    Bernoulli,         // (1-u) delta_0 + u delta_1
    Jacobi,            // mu_{b,a} on [0,1]
    JacobiReflected,   // limit of reflected Jacobi with b > 1, a < 0
    FreeBetaPrime,     // limit of Jacobi with a < 0, b < a - 1
    MultPoisson,       // free multiplicative Poisson
    Uniform,           // U(lo, hi); lo == hi is a Dirac mass
    Pareto,            // F(x) = 1 - s/x on [s, inf)
    Staircase,         // uniform weights on given atoms
    MaxPower,          // free max-convolution power of a base law
    InverseT,          // law whose CDF is the inverse of the base law's T
};

struct Edges {
    double lower = 0.0;
    double upper = 0.0;
};

// Analytic reference measure on the real line. s_of(t) is S(-t) on
// (0, 1 - atom_at_zero); for the symmetric laws it is the positive number m
// with symmetric transform value i*m. t_of is the (shifted) T-transform on (0,1).
class LimitLaw {
public:
    static LimitLaw mp(double b);
    static LimitLaw reversed_mp(double a);
    static LimitLaw stable_half() { return reversed_mp(0.0); }
    static LimitLaw semicircle();
    static LimitLaw arcsine();
    static LimitLaw bernoulli(double u);
    // Limit of D_{k,d} of the l-Bernoulli polynomial with k/d -> t, l/d -> u.
    static LimitLaw free_binomial(double t, double u);
    static LimitLaw jacobi(double a, double b);
    static LimitLaw jacobi_reflected(double a, double b);
    static LimitLaw free_beta_prime(double b, double a);
    static LimitLaw mult_poisson(double lambda, double beta);
    static LimitLaw uniform(double lo, double hi);
    static LimitLaw dirac(double c) { return uniform(c, c); }
    static LimitLaw pareto(double scale);
    static LimitLaw staircase(std::vector<double> atoms);
    static LimitLaw max_power(const LimitLaw& base, double t);
    static LimitLaw inverse_t(const LimitLaw& base);

    LawKind kind() const { return kind_; }
    std::string name() const;
    const std::vector<double>& params() const { return params_; }

    double atom_at_zero() const;
    bool is_symmetric() const { return kind_ == LawKind::Semicircle || kind_ == LawKind::Arcsine; }
    bool has_s() const;
    bool has_t() const;
    bool has_cdf() const;
    bool is_dirac() const;

    double s_of(double t) const;
    double t_of(double t) const;
    double cdf(double x) const;
    // Left limit F(x-).
    double cdf_left(double x) const;
    // Closed hull of the support; upper may be +inf.
    Edges support() const;

private:
    LimitLaw(LawKind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}

    double density_cdf(double x) const;
    double atom_mass_below(double x, bool inclusive) const;

    LawKind kind_;
    std::vector<double> params_;
    std::shared_ptr<const LimitLaw> base_;
};

// L+- (a,b) = ((sqrt(a-b) +- sqrt((a-1)b)) / a)^2.
Edges jacobi_edges(double a, double b);
// alpha+-(t,u) = (sqrt(t(1-u)) +- sqrt(u(1-t)))^2 for t,u in (0,1).
Edges alpha_edges(double t, double u);

// Pushforward Phi(mu): closed form for MP (uniform), the positive 1/2-stable law
// (Pareto) and Dirac masses, otherwise the inverse-of-T law.
LimitLaw phi_of(const LimitLaw& law);

// Integral of f against the law for laws with a density and finitely many atoms.
double expectation(const LimitLaw& law, const std::function<double(double)>& f);

}  // namespace finfree
