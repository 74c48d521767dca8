#include "finfree/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "finfree/errors.hpp"

namespace finfree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadTol = 1e-12;
constexpr unsigned kQuadDepth = 15;

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

void require_open_unit(double t, double hi, const char* what) {
    if (!(t > 0.0 && t < hi))
        throw DomainError(std::string(what) + ": argument " + std::to_string(t) + " outside (0, " +
                          std::to_string(hi) + ")");
}

template <class F>
double integrate(F f, double a, double b) {
    if (!(b > a)) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, kQuadDepth, kQuadTol, &err);
}

// Densities of the form w(x) sqrt((x - lo)(hi - x)) on [lo, hi], integrated
// in the angle x = lo + (hi - lo) sin^2(theta/2), which removes both edge
// singularities.
struct SqrtEdgeDensity {
    double lo;
    double hi;
    std::function<double(double)> weight;

    double x_of(double theta) const {
        double s = std::sin(theta / 2.0);
        return lo + (hi - lo) * s * s;
    }
    double theta_of(double x) const {
        if (x <= lo) return 0.0;
        if (x >= hi) return std::numbers::pi;
        return 2.0 * std::asin(std::sqrt((x - lo) / (hi - lo)));
    }
    template <class F>
    double integrate_upto(double x, F f) const {
        const double half = (hi - lo) / 2.0;
        auto g = [&](double th) {
            double s = std::sin(th);
            double xx = x_of(th);
            return f(xx) * weight(xx) * half * half * s * s;
        };
        return integrate(g, 0.0, theta_of(x));
    }
};

SqrtEdgeDensity mp_density(double b) {
    double r = std::sqrt(b);
    return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r), [](double x) { return 1.0 / (2.0 * std::numbers::pi * x); }};
}

SqrtEdgeDensity jacobi_density(double a, double b) {
    Edges e = jacobi_edges(a, b);
    return {e.lower, e.upper,
            [a](double x) { return a / (2.0 * std::numbers::pi * x * (1.0 - x)); }};
}

double jacobi_atom0(double b) { return std::max(0.0, 1.0 - b); }
double jacobi_atom1(double a, double b) { return std::max(0.0, 1.0 - (a - b)); }

// sup { t in (0,1) : T(t) <= x } (or < x when strict), by bisection on the
// non-decreasing T.
double inverse_of_t(const LimitLaw& base, double x, bool strict) {
    auto below = [&](double t) {
        double v = base.t_of(t);
        return strict ? v < x : v <= x;
    };
    double lo = 0.0, hi = 1.0;
    const double eps = 1e-15;
    if (!below(eps)) return 0.0;
    if (below(1.0 - eps)) return 1.0;
    lo = eps;
    hi = 1.0 - eps;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi);
        if (below(mid)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

Edges jacobi_edges(double a, double b) {
    require(a > 0.0 && a - b >= 0.0 && (a - 1.0) * b >= 0.0, "jacobi_edges: need a > 0, a >= b, (a-1) b >= 0");
    double p = std::sqrt(a - b), q = std::sqrt((a - 1.0) * b);
    double lo = (p - q) / a, hi = (p + q) / a;
    return {lo * lo, hi * hi};
}

Edges alpha_edges(double t, double u) {
    require(t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0, "alpha_edges: t and u must lie in (0,1)");
    double p = std::sqrt(t * (1.0 - u)), q = std::sqrt(u * (1.0 - t));
    return {(p - q) * (p - q), (p + q) * (p + q)};
}

LimitLaw LimitLaw::mp(double b) {
    require(b > 0.0, "MP: rate must be positive");
    return LimitLaw(LawKind::MP, {b});
}

LimitLaw LimitLaw::reversed_mp(double a) {
    require(a <= 0.0, "reversed MP: parameter must be <= 0");
    return LimitLaw(LawKind::ReversedMP, {a});
}

LimitLaw LimitLaw::semicircle() { return LimitLaw(LawKind::Semicircle, {}); }
LimitLaw LimitLaw::arcsine() { return LimitLaw(LawKind::Arcsine, {}); }

LimitLaw LimitLaw::bernoulli(double u) {
    require(u > 0.0 && u <= 1.0, "bernoulli: u must lie in (0,1]");
    return LimitLaw(LawKind::Bernoulli, {u});
}

LimitLaw LimitLaw::free_binomial(double t, double u) {
    require(t > 0.0 && t <= 1.0 && u > 0.0 && u <= 1.0, "free_binomial: t, u must lie in (0,1]");
    return jacobi(1.0 / t, u / t);
}

LimitLaw LimitLaw::jacobi(double a, double b) {
    require(b > 0.0 && a >= 1.0 && a - b >= 0.0, "jacobi law: need b > 0, a >= max(1, b)");
    return LimitLaw(LawKind::Jacobi, {a, b});
}

LimitLaw LimitLaw::jacobi_reflected(double a, double b) {
    require(b > 1.0 && a < 0.0, "reflected jacobi law: need b > 1, a < 0");
    return LimitLaw(LawKind::JacobiReflected, {a, b});
}

LimitLaw LimitLaw::free_beta_prime(double b, double a) {
    require(a < 0.0 && b < a - 1.0, "free beta prime law: need a < 0, b < a - 1");
    return LimitLaw(LawKind::FreeBetaPrime, {a, b});
}

LimitLaw LimitLaw::mult_poisson(double lambda, double beta) {
    require(lambda > 0.0, "multiplicative Poisson: lambda must be positive");
    require(beta < 0.0 || beta > 1.0, "multiplicative Poisson: beta must lie outside [0,1]");
    return LimitLaw(LawKind::MultPoisson, {lambda, beta});
}

LimitLaw LimitLaw::uniform(double lo, double hi) {
    require(lo <= hi, "uniform: need lo <= hi");
    return LimitLaw(LawKind::Uniform, {lo, hi});
}

LimitLaw LimitLaw::pareto(double scale) {
    require(scale > 0.0, "pareto: scale must be positive");
    return LimitLaw(LawKind::Pareto, {scale});
}

LimitLaw LimitLaw::staircase(std::vector<double> atoms) {
    require(!atoms.empty(), "staircase: no atoms");
    std::sort(atoms.begin(), atoms.end());
    return LimitLaw(LawKind::Staircase, std::move(atoms));
}

LimitLaw LimitLaw::max_power(const LimitLaw& base, double t) {
    require(t >= 1.0, "max_power: t must be at least 1");
    require(base.has_cdf(), "max_power: base law needs a CDF");
    if (base.kind() == LawKind::Pareto) return pareto(base.params_[0] * t);
    LimitLaw out(LawKind::MaxPower, {t});
    out.base_ = std::make_shared<LimitLaw>(base);
    return out;
}

LimitLaw LimitLaw::inverse_t(const LimitLaw& base) {
    require(base.has_t(), "inverse_t: base law has no T-transform");
    LimitLaw out(LawKind::InverseT, {});
    out.base_ = std::make_shared<LimitLaw>(base);
    return out;
}

std::string LimitLaw::name() const {
    switch (kind_) {
        case LawKind::MP: return "MP(" + fmt(params_[0]) + ")";
        case LawKind::ReversedMP: return "ReversedMP(" + fmt(params_[0]) + ")";
        case LawKind::Semicircle: return "Semicircle";
        case LawKind::Arcsine: return "Arcsine";
        case LawKind::Bernoulli: return "Bernoulli(" + fmt(params_[0]) + ")";
        case LawKind::Jacobi: return "Jacobi(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case LawKind::JacobiReflected: return "JacobiReflected(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case LawKind::FreeBetaPrime: return "FreeBetaPrime(" + fmt(params_[1]) + "," + fmt(params_[0]) + ")";
        case LawKind::MultPoisson: return "MultPoisson(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case LawKind::Uniform:
            return is_dirac() ? "Dirac(" + fmt(params_[0]) + ")" : "U(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case LawKind::Pareto: return "Pareto(" + fmt(params_[0]) + ")";
        case LawKind::Staircase: return "Staircase(" + std::to_string(params_.size()) + ")";
        case LawKind::MaxPower: return base_->name() + "^max(" + fmt(params_[0]) + ")";
        case LawKind::InverseT: return "Phi(" + base_->name() + ")";
    }
    return "?";
}

bool LimitLaw::is_dirac() const { return kind_ == LawKind::Uniform && params_[0] == params_[1]; }

double LimitLaw::atom_at_zero() const {
    switch (kind_) {
        case LawKind::MP: return std::max(0.0, 1.0 - params_[0]);
        case LawKind::Bernoulli: return 1.0 - params_[0];
        case LawKind::Jacobi: return jacobi_atom0(params_[1]);
        case LawKind::Uniform: return is_dirac() && params_[0] == 0.0 ? 1.0 : 0.0;
        case LawKind::Staircase:
            return static_cast<double>(std::count(params_.begin(), params_.end(), 0.0)) / params_.size();
        default: return 0.0;
    }
}

bool LimitLaw::has_s() const {
    switch (kind_) {
        case LawKind::MP:
        case LawKind::ReversedMP:
        case LawKind::Semicircle:
        case LawKind::Arcsine:
        case LawKind::Bernoulli:
        case LawKind::Jacobi:
        case LawKind::JacobiReflected:
        case LawKind::FreeBetaPrime:
        case LawKind::MultPoisson: return true;
        case LawKind::Uniform: return is_dirac() && params_[0] > 0.0;
        default: return false;
    }
}

bool LimitLaw::has_t() const {
    if (kind_ == LawKind::Uniform) return is_dirac() && params_[0] >= 0.0;
    return has_s() && !is_symmetric();
}

bool LimitLaw::has_cdf() const {
    switch (kind_) {
        case LawKind::JacobiReflected:
        case LawKind::FreeBetaPrime:
        case LawKind::MultPoisson: return false;
        default: return true;
    }
}

double LimitLaw::s_of(double t) const {
    require(has_s(), "s_of: " + name() + " has no S-transform here");
    const double hi = 1.0 - atom_at_zero();
    require_open_unit(t, hi, "s_of");
    switch (kind_) {
        case LawKind::MP: return 1.0 / (params_[0] - t);
        case LawKind::ReversedMP: return t - params_[0];
        case LawKind::Semicircle: return 1.0 / std::sqrt(t);
        case LawKind::Arcsine: return std::sqrt((2.0 - t) / t);
        case LawKind::Bernoulli: return (1.0 - t) / (params_[0] - t);
        case LawKind::Jacobi:
        case LawKind::FreeBetaPrime: return (params_[0] - t) / (params_[1] - t);
        case LawKind::JacobiReflected: return (t - params_[0]) / (params_[1] - t);
        case LawKind::MultPoisson: return std::exp(params_[0] / (params_[1] - t));
        case LawKind::Uniform: return 1.0 / params_[0];
        default: break;
    }
    throw DomainError("s_of: unsupported law");
}

double LimitLaw::t_of(double t) const {
    require(has_t(), "t_of: " + name() + " has no T-transform here");
    require_open_unit(t, 1.0, "t_of");
    if (t <= atom_at_zero()) return 0.0;
    switch (kind_) {
        case LawKind::MP: return params_[0] - 1.0 + t;
        case LawKind::ReversedMP: return 1.0 / (1.0 - t - params_[0]);
        case LawKind::Bernoulli: return (params_[0] + t - 1.0) / t;
        case LawKind::Jacobi:
        case LawKind::FreeBetaPrime: return (params_[1] - 1.0 + t) / (params_[0] - 1.0 + t);
        case LawKind::JacobiReflected: return (params_[1] - 1.0 + t) / (1.0 - t - params_[0]);
        case LawKind::MultPoisson: return std::exp(-params_[0] / (params_[1] - 1.0 + t));
        case LawKind::Uniform: return params_[0];
        default: break;
    }
    throw DomainError("t_of: unsupported law");
}

double LimitLaw::atom_mass_below(double x, bool inclusive) const {
    auto hit = [&](double at) { return inclusive ? at <= x : at < x; };
    double m = 0.0;
    switch (kind_) {
        case LawKind::MP:
            if (hit(0.0)) m += atom_at_zero();
            break;
        case LawKind::Jacobi:
            if (hit(0.0)) m += jacobi_atom0(params_[1]);
            if (hit(1.0)) m += jacobi_atom1(params_[0], params_[1]);
            break;
        default: break;
    }
    return m;
}

double LimitLaw::density_cdf(double x) const {
    if (kind_ == LawKind::MP) {
        auto dens = mp_density(params_[0]);
        if (x <= dens.lo) return 0.0;
        if (x >= dens.hi) return std::min(1.0, params_[0]);
        return dens.integrate_upto(x, [](double) { return 1.0; });
    }
    auto dens = jacobi_density(params_[0], params_[1]);
    const double mass = 1.0 - jacobi_atom0(params_[1]) - jacobi_atom1(params_[0], params_[1]);
    if (x <= dens.lo) return 0.0;
    if (x >= dens.hi) return mass;
    return dens.integrate_upto(x, [](double) { return 1.0; });
}

double LimitLaw::cdf(double x) const {
    require(has_cdf(), "cdf: " + name() + " has no CDF");
    switch (kind_) {
        case LawKind::MP:
        case LawKind::Jacobi: return std::min(1.0, density_cdf(x) + atom_mass_below(x, true));
        case LawKind::ReversedMP: {
            if (x <= 0.0) return 0.0;
            LimitLaw base = mp(1.0 - params_[0]);
            return 1.0 - base.cdf_left(1.0 / x);
        }
        case LawKind::Semicircle:
            if (x <= -2.0) return 0.0;
            if (x >= 2.0) return 1.0;
            return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) + std::asin(x / 2.0) / std::numbers::pi;
        case LawKind::Arcsine:
            if (x <= -1.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return 0.5 + std::asin(x) / std::numbers::pi;
        case LawKind::Bernoulli: return x < 0.0 ? 0.0 : (x < 1.0 ? 1.0 - params_[0] : 1.0);
        case LawKind::Uniform: {
            const double lo = params_[0], hi = params_[1];
            if (x < lo) return 0.0;
            if (x >= hi) return 1.0;
            return (x - lo) / (hi - lo);
        }
        case LawKind::Pareto: return x <= params_[0] ? 0.0 : 1.0 - params_[0] / x;
        case LawKind::Staircase:
            return static_cast<double>(std::upper_bound(params_.begin(), params_.end(), x) - params_.begin()) /
                   params_.size();
        case LawKind::MaxPower: return std::max(params_[0] * base_->cdf(x) - (params_[0] - 1.0), 0.0);
        case LawKind::InverseT: return inverse_of_t(*base_, x, false);
        default: break;
    }
    throw DomainError("cdf: unsupported law");
}

double LimitLaw::cdf_left(double x) const {
    require(has_cdf(), "cdf_left: " + name() + " has no CDF");
    switch (kind_) {
        case LawKind::MP:
        case LawKind::Jacobi: return std::min(1.0, density_cdf(x) + atom_mass_below(x, false));
        case LawKind::ReversedMP: {
            if (x <= 0.0) return 0.0;
            LimitLaw base = mp(1.0 - params_[0]);
            return 1.0 - base.cdf(1.0 / x);
        }
        case LawKind::Bernoulli: return x <= 0.0 ? 0.0 : (x <= 1.0 ? 1.0 - params_[0] : 1.0);
        case LawKind::Uniform:
            if (is_dirac()) return x <= params_[0] ? 0.0 : 1.0;
            return cdf(x);
        case LawKind::Staircase:
            return static_cast<double>(std::lower_bound(params_.begin(), params_.end(), x) - params_.begin()) /
                   params_.size();
        case LawKind::MaxPower: return std::max(params_[0] * base_->cdf_left(x) - (params_[0] - 1.0), 0.0);
        case LawKind::InverseT: return inverse_of_t(*base_, x, true);
        default: return cdf(x);
    }
}

Edges LimitLaw::support() const {
    switch (kind_) {
        case LawKind::MP: {
            auto d = mp_density(params_[0]);
            return {atom_at_zero() > 0.0 ? 0.0 : d.lo, d.hi};
        }
        case LawKind::ReversedMP: {
            auto d = mp_density(1.0 - params_[0]);
            return {1.0 / d.hi, d.lo > 0.0 ? 1.0 / d.lo : kInf};
        }
        case LawKind::Semicircle: return {-2.0, 2.0};
        case LawKind::Arcsine: return {-1.0, 1.0};
        case LawKind::Bernoulli: return {params_[0] < 1.0 ? 0.0 : 1.0, 1.0};
        case LawKind::Jacobi: {
            Edges e = jacobi_edges(params_[0], params_[1]);
            if (jacobi_atom0(params_[1]) > 0.0) e.lower = 0.0;
            if (jacobi_atom1(params_[0], params_[1]) > 0.0) e.upper = 1.0;
            return e;
        }
        case LawKind::JacobiReflected:
        case LawKind::FreeBetaPrime:
        case LawKind::MultPoisson: return {t_of(1e-12), t_of(1.0 - 1e-12)};
        case LawKind::Uniform: return {params_[0], params_[1]};
        case LawKind::Pareto: return {params_[0], kInf};
        case LawKind::Staircase: return {params_.front(), params_.back()};
        case LawKind::MaxPower: {
            Edges b = base_->support();
            // lower edge solves t F(x) = t - 1
            const double level = (params_[0] - 1.0) / params_[0];
            double lo = b.lower, hi = std::isfinite(b.upper) ? b.upper : std::max(1.0, 2.0 * std::abs(b.lower));
            while (!std::isfinite(b.upper) && base_->cdf(hi) <= level) hi *= 2.0;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                if (base_->cdf(mid) <= level) lo = mid;
                else hi = mid;
            }
            return {params_[0] > 1.0 ? hi : b.lower, b.upper};
        }
        case LawKind::InverseT: return {base_->t_of(1e-12), base_->t_of(1.0 - 1e-12)};
    }
    return {};
}

LimitLaw phi_of(const LimitLaw& law) {
    if (law.is_dirac()) return law;
    if (law.kind() == LawKind::MP && law.params()[0] >= 1.0)
        return LimitLaw::uniform(law.params()[0] - 1.0, law.params()[0]);
    if (law.kind() == LawKind::ReversedMP && law.params()[0] == 0.0) return LimitLaw::pareto(1.0);
    if (!law.has_t()) throw DomainError("phi_of: " + law.name() + " has no T-transform");
    return LimitLaw::inverse_t(law);
}

double expectation(const LimitLaw& law, const std::function<double(double)>& f) {
    const auto& p = law.params();
    switch (law.kind()) {
        case LawKind::MP: {
            auto dens = mp_density(p[0]);
            return dens.integrate_upto(dens.hi, f) + law.atom_at_zero() * (law.atom_at_zero() > 0.0 ? f(0.0) : 0.0);
        }
        case LawKind::Jacobi: {
            auto dens = jacobi_density(p[0], p[1]);
            double m0 = jacobi_atom0(p[1]), m1 = jacobi_atom1(p[0], p[1]);
            return dens.integrate_upto(dens.hi, f) + (m0 > 0.0 ? m0 * f(0.0) : 0.0) + (m1 > 0.0 ? m1 * f(1.0) : 0.0);
        }
        case LawKind::Semicircle:
            return integrate(
                [&](double th) {
                    double s = std::sin(th);
                    return f(-2.0 * std::cos(th)) * 2.0 * s * s / std::numbers::pi;
                },
                0.0, std::numbers::pi);
        case LawKind::Arcsine:
            return integrate([&](double th) { return f(-std::cos(th)) / std::numbers::pi; }, 0.0, std::numbers::pi);
        case LawKind::Bernoulli: return (1.0 - p[0]) * f(0.0) + p[0] * f(1.0);
        case LawKind::Uniform:
            if (law.is_dirac()) return f(p[0]);
            return integrate(f, p[0], p[1]) / (p[1] - p[0]);
        case LawKind::Staircase: {
            double s = 0.0;
            for (double a : p) s += f(a);
            return s / p.size();
        }
        default: break;
    }
    throw DomainError("expectation: unsupported law " + law.name());
}

}  // namespace finfree
