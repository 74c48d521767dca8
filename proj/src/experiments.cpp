#include "finfree/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "finfree/convolutions.hpp"
#include "finfree/cumulants.hpp"
#include "finfree/empirics.hpp"
#include "finfree/errors.hpp"
#include "finfree/families.hpp"
#include "finfree/limit_laws.hpp"
#include "finfree/mc.hpp"
#include "finfree/transforms.hpp"

namespace finfree {

namespace {

using Rows = std::vector<ReportRow>;

int bits_of(const ExperimentOptions& o) { return o.precision_bits.value_or(default_precision_bits()); }

std::vector<int> grid_of(const ExperimentOptions& o, std::vector<int> def) {
    std::vector<int> g = o.dgrid.empty() ? std::move(def) : o.dgrid;
    if (o.dmax) {
        std::erase_if(g, [&](int d) { return d > *o.dmax; });
        if (g.empty()) g.push_back(*o.dmax);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    for (int d : g)
        if (d < 1) throw DomainError("degree grid entries must be positive");
    return g;
}

int single_d(const ExperimentOptions& o, int def) {
    int d = o.dmax.value_or(def);
    if (d < 1) throw DomainError("--dmax must be positive");
    return d;
}

double t_or(const ExperimentOptions& o, double def) { return o.t.value_or(def); }

// Relative agreement expected from two rounding paths of the same exact value.
double working_tol(int bits) { return std::ldexp(1.0, 16 - bits); }

Real rd(double v, int bits) { return Real(v, bits); }
Real rl(long v, int bits) { return Real(v, bits); }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Computes the rows of n independent units, on up to `workers` threads,
// and concatenates them in unit order.
Rows parallel_units(int n, int workers, const std::function<Rows(int)>& unit) {
    std::vector<Rows> out(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    auto work = [&]() {
        for (int i = next++; i < n; i = next++) {
            try {
                out[static_cast<std::size_t>(i)] = unit(i);
            } catch (...) {
                errs[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    const int w = std::max(1, std::min(workers, n));
    std::vector<std::thread> pool;
    for (int i = 1; i < w; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    Rows all;
    for (auto& r : out) all.insert(all.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    return all;
}

// Errors of one label, ordered by d.
std::vector<double> errors_by_d(const Rows& rows, const std::string& label) {
    std::vector<std::pair<int, double>> v;
    for (const auto& r : rows)
        if (r.label == label) v.emplace_back(r.d, r.abs_error.to_double());
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (auto& [d, e] : v) out.push_back(e);
    return out;
}

ReportCheck monotone_check(const Rows& rows, const std::string& label) {
    auto e = errors_by_d(rows, label);
    ReportCheck c{label + " error decreases with d", true, ""};
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i > 0) {
            c.detail += " > ";
            if (!(e[i] < e[i - 1])) c.pass = false;
        }
        c.detail += fmt(e[i]);
    }
    return c;
}

Real max_rel(const std::vector<Real>& a, const std::vector<Real>& b) {
    if (a.size() != b.size()) throw DomainError("length mismatch in comparison");
    Real m(0L, 53);
    for (std::size_t i = 0; i < a.size(); ++i) m = max(m, relative_difference(a[i], b[i]));
    return m;
}

Real max_abs_diff(const std::vector<Real>& a, const std::vector<Real>& b) {
    if (a.size() != b.size()) return Real(1L, 53);
    Real m(0L, 53);
    for (std::size_t i = 0; i < a.size(); ++i) m = max(m, abs(a[i] - b[i]));
    return m;
}

// a and b as rows of one comparison: finite = max rel deviation, analytic = 0.
ReportRow deviation_row(std::string label, int d, double k, const Real& deviation, Metric metric, double tol) {
    ReportRow r = make_row(std::move(label), d, k, deviation, Real(0L, deviation.precision()), metric, tol);
    r.abs_error = deviation;
    r.rel_error = deviation;
    r.evaluate();
    return r;
}

Poly random_poly(std::mt19937_64& rng, int d, double lo, double hi, int bits) {
    return from_roots(RootSet(random_roots(rng, d, lo, hi, bits)), bits);
}

// ---------------------------------------------------------------- presets

ExperimentReport laguerre_exact(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 500);
    const long b = 2;
    ExperimentReport rep;
    Poly p = laguerre(d, rl(b, bits), bits);
    FiniteTransform s = finite_s(p);
    for (int k = 1; k <= d; ++k) {
        // 1/(b - (k-1)/d) = d / (b d - k + 1)
        Real closed = rl(d, bits) / rl(b * d - k + 1, bits);
        rep.rows.push_back(make_row("S", d, k, s.values[static_cast<std::size_t>(k - 1)], closed, Metric::Rel, 1e-20));
    }
    return rep;
}

ExperimentReport laguerre_mp(const ExperimentOptions& o) {
    const int bits = bits_of(o);
    const double t = t_or(o, 0.5), b = 2.0;
    if (!(t > 0.0 && t < 1.0)) throw DomainError("--t must lie in (0,1)");
    ExperimentReport rep;
    for (int d : grid_of(o, {50, 100, 200, 400})) {
        Poly p = laguerre(d, rd(b, bits), bits);
        FiniteTransform s = finite_s(p);
        int k = std::max(1, static_cast<int>(std::ceil(t * d - 1e-9)));
        Real limit = 1L / (rd(b, bits) - rd(t, bits));
        rep.rows.push_back(make_row("S", d, t, s.values[static_cast<std::size_t>(k - 1)], limit, Metric::Abs, 2.0 / d));
    }
    rep.checks.push_back(monotone_check(rep.rows, "S"));
    return rep;
}

ExperimentReport hermite_exact(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 100);
    ExperimentReport rep;
    FiniteTransform s = finite_s_symmetric(hermite(2 * d, bits));
    for (int k = 1; k <= d; ++k) {
        // 1/sqrt(k/d - 1/(2d)) = sqrt(2d/(2k-1))
        Real closed = sqrt(rl(2L * d, bits) / rl(2L * k - 1, bits));
        rep.rows.push_back(make_row("H", d, k, s.values[static_cast<std::size_t>(k - 1)], closed, Metric::Rel, 1e-18));
    }
    return rep;
}

ExperimentReport chebyshev_exact(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 100);
    ExperimentReport rep;
    FiniteTransform st = finite_s_symmetric(chebyshev_t(2 * d, bits));
    FiniteTransform su = finite_s_symmetric(chebyshev_u(2 * d, bits));
    for (int k = 1; k <= d; ++k) {
        Real ct = sqrt(rl(2L * (2L * d - k), bits) / rl(2L * k - 1, bits));
        Real cu = sqrt(rl(2L * (2L * d + 1 - k), bits) / rl(2L * k - 1, bits));
        rep.rows.push_back(make_row("T", d, k, st.values[static_cast<std::size_t>(k - 1)], ct, Metric::Rel, 1e-18));
        rep.rows.push_back(make_row("U", d, k, su.values[static_cast<std::size_t>(k - 1)], cu, Metric::Rel, 1e-18));
    }
    return rep;
}

ExperimentReport cumulant_scaling(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 24);
    const int npoly = 5, nmax = std::min(8, d);
    ExperimentReport rep;
    rep.rows = parallel_units(npoly, o.workers, [&](int i) {
        auto rng = mc_stream(o.seed, static_cast<std::uint64_t>(i));
        Poly p = random_poly(rng, d, 0.0, 2.0, bits);
        CumulantVec kd = cumulants(p, nmax);
        Rows rows;
        for (int j = 1; j <= d; ++j) {
            CumulantVec kj = cumulants(diff_kd(p, j), std::min(nmax, j));
            for (int n = 1; n <= std::min(nmax, j); ++n) {
                Real target = pow(rl(j, bits) / rl(d, bits), static_cast<long>(n - 1)) * kd(n);
                rows.push_back(make_row("p" + std::to_string(i) + ".n" + std::to_string(n), j, n, kj(n), target,
                                        Metric::Rel, 1e-12));
            }
        }
        return rows;
    });
    return rep;
}

ExperimentReport diff_commute(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 30), pairs = 100;
    ExperimentReport rep;
    rep.rows = parallel_units(pairs, o.workers, [&](int i) {
        auto rng = mc_stream(o.seed, static_cast<std::uint64_t>(i));
        Poly p = random_poly(rng, d, -5.0, 5.0, bits);
        Poly q = random_poly(rng, d, 0.0, 5.0, bits);
        Poly plus = boxplus(p, q), times = boxtimes(p, q);
        Real dev_plus(0L, 53), dev_times(0L, 53);
        for (int k = 1; k <= d; ++k) {
            const Poly a = diff_kd(plus, k), b = boxplus(diff_kd(p, k), diff_kd(q, k));
            const Poly c = diff_kd(times, k), e = boxtimes(diff_kd(p, k), diff_kd(q, k));
            dev_plus = max(dev_plus, max_abs_diff(a.coeffs(), b.coeffs()));
            dev_times = max(dev_times, max_abs_diff(c.coeffs(), e.coeffs()));
        }
        Rows rows;
        rows.push_back(deviation_row("boxplus", d, i, dev_plus, Metric::Abs, 0.0));
        rows.push_back(deviation_row("boxtimes", d, i, dev_times, Metric::Abs, 0.0));
        return rows;
    });
    return rep;
}

// Largest amount by which lambda_i(p) exceeds lambda_i(q).
Real order_violation(const RootSet& p, const RootSet& q) {
    Real v(0L, 53);
    for (int i = 0; i < p.degree(); ++i)
        v = max(v, p[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i)]);
    return v;
}

ExperimentReport order(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 40), pairs = 200;
    const double tol = 1e-10;
    ExperimentReport rep;
    rep.notes.push_back("q has roots lambda_i(p) + U[0,0.5]; r, p, q nonnegative-rooted");
    rep.rows = parallel_units(pairs, o.workers, [&](int i) {
        auto rng = mc_stream(o.seed, static_cast<std::uint64_t>(i));
        std::vector<Real> lam = random_roots(rng, d, 0.0, 4.0, bits);
        std::uniform_real_distribution<double> bump(0.0, 0.5);
        std::vector<Real> mu;
        for (const auto& l : lam) mu.push_back(l + rd(bump(rng), bits));
        Poly p = from_roots(RootSet(lam), bits), q = from_roots(RootSet(mu), bits);
        Poly r = random_poly(rng, d, 0.0, 3.0, bits);
        const int k = std::uniform_int_distribution<int>(1, d)(rng);
        Rows rows;
        auto check = [&](const std::string& label, const Poly& a, const Poly& b) {
            Real v = order_violation(roots_of(a.without_known_roots()), roots_of(b.without_known_roots()));
            rows.push_back(deviation_row(label, d, i, v, Metric::Abs, tol));
        };
        check("boxplus", boxplus(p, r), boxplus(q, r));
        check("boxtimes", boxtimes(p, r), boxtimes(q, r));
        check("diff_k" + std::to_string(k), diff_kd(p, k), diff_kd(q, k));
        return rows;
    });
    return rep;
}

ExperimentReport s_algebra(const ExperimentOptions& o) {
    const int bits = bits_of(o), dcap = single_d(o, 60), count = 100;
    const double tol = 1e-15;
    ExperimentReport rep;
    rep.rows = parallel_units(count, o.workers, [&](int i) {
        auto rng = mc_stream(o.seed, static_cast<std::uint64_t>(i));
        const int d = std::uniform_int_distribution<int>(2, std::max(2, dcap))(rng);
        RootSet lam(random_roots(rng, d, 0.1, 10.0, bits));
        Poly p = from_roots(lam, bits);
        Poly q = random_poly(rng, d, 0.1, 10.0, bits);
        FiniteTransform sp = finite_s(p), sq = finite_s(q), spq = finite_s(boxtimes(p, q));
        FiniteTransform srev = finite_s(reverse(p));
        Real mult(0L, 53), rev(0L, 53);
        for (int k = 1; k <= d; ++k) {
            const auto ks = static_cast<std::size_t>(k - 1);
            mult = max(mult, relative_difference(spq.values[ks], sp.values[ks] * sq.values[ks]));
            Real prod = sp.values[ks] * srev.values[static_cast<std::size_t>(d - k)];
            rev = max(rev, abs(prod - 1L));
        }
        Rows rows;
        rows.push_back(deviation_row("multiplicativity", d, i, mult, Metric::Rel, tol));
        rows.push_back(deviation_row("reversal", d, i, rev, Metric::Abs, tol));

        Real sum(0L, bits), inv(0L, bits);
        for (const auto& l : lam.roots()) {
            sum += l;
            inv += 1L / l;
        }
        rows.push_back(make_row("S(-1/d)=1/mean", d, i, sp.values.front(), rl(d, bits) / sum, Metric::Rel, tol));
        rows.push_back(make_row("S(-1)=-G(0)", d, i, sp.values.back(), -cauchy_at(lam, rl(0, bits)), Metric::Rel, tol));
        rows.push_back(make_row("(1/d)sum 1/lambda", d, i, sp.values.back(), inv / static_cast<long>(d), Metric::Rel,
                                tol));

        const int l = std::uniform_int_distribution<int>(1, d)(rng);
        FiniteTransform sl = finite_s(diff_kd(p, l));
        Real deriv(0L, 53);
        for (int k = 1; k <= l; ++k)
            deriv = max(deriv, relative_difference(sp.values[static_cast<std::size_t>(k - 1)],
                                                   sl.values[static_cast<std::size_t>(k - 1)]));
        rows.push_back(deviation_row("derivative", d, i, deriv, Metric::Rel, tol));

        const int k = std::uniform_int_distribution<int>(1, d)(rng);
        const Real a = rd(std::uniform_real_distribution<double>(0.5, 3.0)(rng), bits);
        FiniteTransform ssh = finite_s(shift(p, a));
        Real g = -cauchy_at(roots_of(diff_kd(p, k)), -a);
        rows.push_back(make_row("shift", d, i, ssh.values[static_cast<std::size_t>(k - 1)], g, Metric::Rel, tol));
        return rows;
    });
    return rep;
}

ExperimentReport thm13(const ExperimentOptions& o) {
    const int bits = bits_of(o);
    const double b = 2.0;
    ExperimentReport rep;
    const LimitLaw target = phi_of(LimitLaw::mp(b));
    for (int d : grid_of(o, {50, 100, 200})) {
        Poly phi = phi_d(laguerre(d, rd(b, bits), bits));
        const RootSet& got = *phi.known_roots();
        std::vector<Real> expect;
        for (int k = 1; k <= d; ++k) expect.push_back(rd(b, bits) - rl(k - 1, bits) / static_cast<long>(d));
        rep.rows.push_back(deviation_row("roots", d, 0, max_rel(got.roots(), expect), Metric::Rel, working_tol(bits)));
        rep.rows.push_back(make_ks_row("ks_uniform", d, 0, ks_distance(EmpiricalMeasure::of(got), target),
                                       1.0 / d + kKsSlack));
        // Dirac fixed point. At c = 2 every coefficient 2^k is exact, so the
        // fixed point must hold with zero error; c = 1.5 rounds 1.5^k once d
        // is large and is checked to working precision.
        for (double c : {1.5, 2.0}) {
            Poly dirac = from_roots(std::vector<Real>(static_cast<std::size_t>(d), rd(c, bits)), bits);
            Poly fixed = phi_d(dirac.without_known_roots());
            Real dev = max_rel(fixed.known_roots()->roots(), dirac.known_roots()->roots());
            if (c == 2.0) rep.rows.push_back(deviation_row("dirac", d, c, dev, Metric::Abs, 0.0));
            else rep.rows.push_back(deviation_row("dirac", d, c, dev, Metric::Rel, working_tol(bits)));
        }
    }
    return rep;
}

ExperimentReport jacobi_edges_preset(const ExperimentOptions& o) {
    const double a = 4.0, b = 1.5;
    const Edges e = jacobi_edges(a, b);
    const auto grid = grid_of(o, {50, 100, 200, 400});
    ExperimentReport rep;
    int bits_used = 0;
    for (int d : grid) {
        const int bits = root_precision(d, bits_of(o));
        bits_used = std::max(bits_used, bits);
        Poly p = jacobi(d, rd(b, bits), rd(a, bits), bits);
        ExtremeRoots x = extreme_roots(p);
        const bool last = d == grid.back();
        rep.rows.push_back(make_row("max", d, 0, x.largest, rd(e.upper, bits), last ? Metric::Abs : Metric::Info, 0.02));
        rep.rows.push_back(make_row("min", d, 0, x.smallest, rd(e.lower, bits), last ? Metric::Abs : Metric::Info, 0.02));
    }
    rep.checks.push_back(monotone_check(rep.rows, "max"));
    rep.checks.push_back(monotone_check(rep.rows, "min"));
    rep.notes.push_back("precision raised to " + std::to_string(bits_used) + " bits for root extraction");
    rep.metadata.precision_bits = bits_used;
    return rep;
}

ExperimentReport bernoulli_edges(const ExperimentOptions& o) {
    const double t = t_or(o, 0.3), u = 0.3, u2 = 0.5;
    const auto grid = grid_of(o, {50, 100, 200, 400});
    ExperimentReport rep;
    auto derivative = [&](int d, double uu, int bits) {
        const long k = std::lround(t * d), l = std::lround(uu * d);
        // D_{k,d} of x^(d-l)(x-1)^l keeps e_j = (l)_j/(d)_j, a hypergeometric polynomial of degree k
        return hgp(HGParams::from_scaled(static_cast<int>(k), {rl(d, bits + 32)}, {rl(l, bits + 32)}), bits);
    };
    for (int d : grid) {
        const int bits = root_precision(static_cast<int>(std::lround(t * d)), bits_of(o));
        const bool last = d == grid.back();
        Real top = max_root(derivative(d, u, bits));
        rep.rows.push_back(
            make_row("max", d, t, top, rd(alpha_edges(t, u).upper, bits), last ? Metric::Abs : Metric::Info, 0.02));
        if (t < u2) {
            Real bottom = min_root(derivative(d, u2, bits));
            rep.rows.push_back(make_row("min_u" + fmt(u2), d, t, bottom, rd(alpha_edges(t, u2).lower, bits),
                                        Metric::Info, 0.0));
        }
    }
    rep.checks.push_back(monotone_check(rep.rows, "max"));
    if (t < u2) rep.checks.push_back(monotone_check(rep.rows, "min_u" + fmt(u2)));
    return rep;
}

ExperimentReport maxconv_identity(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 50), count = 100;
    ExperimentReport rep;
    rep.rows = parallel_units(count, o.workers, [&](int i) {
        auto rng = mc_stream(o.seed, static_cast<std::uint64_t>(i));
        const int zeros = std::uniform_int_distribution<int>(0, 5)(rng);
        std::vector<Real> lam = random_roots(rng, d - zeros, 0.0, 5.0, bits);
        lam.resize(static_cast<std::size_t>(d), rl(0, bits));
        Poly p = from_roots(RootSet(lam), bits).without_known_roots();
        Poly phi = phi_d(p);
        Real dev(0L, 53);
        for (int k = 1; k <= d; ++k) {
            Poly lhs = phi_d(diff_kd(p, k));
            Poly rhs = max_power(phi, k);
            dev = max(dev, max_rel(lhs.known_roots()->roots(), rhs.known_roots()->roots()));
        }
        return Rows{deviation_row("roots", d, i, dev, Metric::Rel, 1e-18)};
    });
    return rep;
}

ExperimentReport theta_identity(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 36);
    const double tol = working_tol(bits);
    ExperimentReport rep;
    rep.notes.push_back("exact identities compared to relative 2^(16-precision_bits)");
    Poly fd = f_d(d, bits);
    for (int k : {6, 12, 18}) {
        if (k > d) continue;
        Poly fk = dilate(diff_kd(fd, k), rl(k, bits) / rl(d, bits));
        rep.rows.push_back(deviation_row("f_k lemma", d, k, max_rel(fk.coeffs(), f_d(k, bits).coeffs()), Metric::Rel, tol));
    }
    Rows rows = parallel_units(5, o.workers, [&](int i) {
        auto rng = mc_stream(o.seed, static_cast<std::uint64_t>(i));
        Poly p = random_poly(rng, d, 0.0, 5.0, bits).without_known_roots();
        Poly th = theta_d(p);
        Rows out;
        for (int k : {6, 12, 18}) {
            if (k > d) continue;
            Poly lhs = theta_d(dilate(diff_kd(p, k), rl(d, bits) / rl(k, bits)));
            Poly rhs = max_power(th, k);
            Real dev = max(max_rel(lhs.coeffs(), rhs.coeffs()),
                           max_rel(lhs.known_roots()->roots(), rhs.known_roots()->roots()));
            out.push_back(deviation_row("theta p" + std::to_string(i), d, k, dev, Metric::Rel, tol));
        }
        return out;
    });
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    return rep;
}

ExperimentReport poisson(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 300);
    const double lambda = t_or(o, 0.7), beta = 2.0;
    const long n = static_cast<long>(std::ceil(lambda * d - 1e-9));
    ExperimentReport rep;
    Poly q = boxtimes_power(poisson_base(d, rd(beta, bits), bits), n);
    FiniteTransform s = finite_s(q);
    const Real db = rd(beta, bits) * static_cast<long>(d);
    for (int k = 1; k <= d; ++k) {
        const Real& v = s.values[static_cast<std::size_t>(k - 1)];
        Real closed = pow(1L + 1L / (db - static_cast<long>(k)), n);
        Real limit = exp(rd(lambda, bits) / (rd(beta, bits) - rl(k, bits) / static_cast<long>(d)));
        rep.rows.push_back(make_row("closed", d, k, v, closed, Metric::Rel, working_tol(bits) * n));
        rep.rows.push_back(make_row("limit", d, k, v, limit, Metric::Abs, 0.01));
    }
    return rep;
}

ExperimentReport stable_half(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 100);
    const double tol = working_tol(bits);
    ExperimentReport rep;
    FiniteTransform s = finite_s(f_d(d, bits));
    SymPoly g(boxtimes(hermite(2 * d, bits).inner(), f_d(2 * d, bits)));
    FiniteTransform sg = finite_s_symmetric(g);
    for (int k = 1; k <= d; ++k) {
        Real kd = rl(k, bits) / rl(d, bits);
        rep.rows.push_back(make_row("f_d S", d, k, s.values[static_cast<std::size_t>(k - 1)], kd, Metric::Rel, tol));
        const Real& m = sg.values[static_cast<std::size_t>(k - 1)];
        // S~^2 = (i m)^2 = -m^2
        rep.rows.push_back(make_row("g S~^2", d, k, -(m * m), -kd, Metric::Rel, tol));
    }
    return rep;
}

ExperimentReport stable_23(const ExperimentOptions& o) {
    const int bits = bits_of(o);
    const double t = t_or(o, 0.5);
    if (!(t > 0.0 && t < 1.0)) throw DomainError("--t must lie in (0,1)");
    ExperimentReport rep;
    rep.notes.push_back("no closed-form CDF for the limit; only the symmetric S-transform limit sqrt(t) is checked");
    for (int d : grid_of(o, {50, 100, 200, 400})) {
        SymPoly g(boxtimes(hermite(2 * d, bits).inner(), f_d(2 * d, bits)));
        FiniteTransform sg = finite_s_symmetric(g);
        const int k = std::max(1, static_cast<int>(std::ceil(t * d - 1e-9)));
        // |sqrt(k/d) - sqrt(t)| <= (k/d - t) / (2 sqrt t) < 1/(2 d sqrt t)
        rep.rows.push_back(make_row("S~", d, t, sg.values[static_cast<std::size_t>(k - 1)], sqrt(rd(t, bits)),
                                    Metric::Abs, 1.0 / (d * std::sqrt(t))));
    }
    return rep;
}

ExperimentReport mc_preset(const ExperimentOptions& o) {
    const int bits = bits_of(o), d = single_d(o, 4);
    if (d > kMcMaxDegree) throw DomainError("mc preset supports d <= 16");
    McConfig cfg;
    cfg.samples = o.mc_samples;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    std::vector<Real> ra, rb;
    for (int i = 0; i < d; ++i) {
        ra.push_back(rd(0.5 + 0.75 * i, bits));
        rb.push_back(rd(0.2 + 0.6 * i * i / d, bits));
    }
    Poly p = from_roots(RootSet(ra), bits), q = from_roots(RootSet(rb), bits);
    ExperimentReport rep;
    rep.notes.push_back("per-row tolerance is 4 standard errors + 1e-12");
    auto add = [&](const std::string& label, const McEstimate& est, const Poly& exact) {
        for (int k = 1; k <= d; ++k)
            rep.rows.push_back(make_row(label, d, k, est.mean.coeff(k), exact.coeff(k), Metric::Abs,
                                        4.0 * est.stderrs[static_cast<std::size_t>(k)] + 1e-12));
    };
    add("boxtimes", mc_boxtimes(p, q, cfg), boxtimes(p, q));
    add("boxplus", mc_boxplus(p, q, cfg), boxplus(p, q));
    HaarMoments h = haar_moments(d, cfg);
    rep.rows.push_back(make_row("haar Re U11", d, 0, rd(h.mean_u11.real(), 53), rl(0, 53), Metric::Abs, 4.0 * h.stderr_re));
    rep.rows.push_back(make_row("haar Im U11", d, 0, rd(h.mean_u11.imag(), 53), rl(0, 53), Metric::Abs, 4.0 * h.stderr_im));
    rep.rows.push_back(make_row("haar |U11|^2", d, 0, rd(h.mean_abs2, 53), rl(1, 53) / static_cast<long>(d),
                                Metric::Abs, 4.0 * h.stderr_abs2));
    return rep;
}

ExperimentReport coeff_limit(const ExperimentOptions& o) {
    const int bits = bits_of(o);
    const double t = t_or(o, 0.5);
    if (!(t > 0.0 && t < 1.0)) throw DomainError("--t must lie in (0,1)");
    const LimitLaw mp1 = LimitLaw::mp(1.0);
    double err = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return std::log(mp1.s_of(x)); }, 0.0, t, 15, 1e-14, &err);
    const double limit = std::exp(-integral);
    ExperimentReport rep;
    rep.notes.push_back("limit exp(-int_0^t log S(-x) dx) by Gauss-Kronrod quadrature");
    for (int d : grid_of(o, {250, 500, 1000})) {
        const int k = static_cast<int>(std::lround(t * d));
        Real v = coeff_geometric_limit(laguerre(d, rl(1, bits), bits), k);
        rep.rows.push_back(make_row("e_k^(1/d)", d, t, v, rd(limit, bits), Metric::Abs, 0.005));
    }
    return rep;
}

ExperimentReport maxconv(const ExperimentOptions& o) {
    const int bits = bits_of(o);
    const double t = t_or(o, 2.0);
    if (!(t >= 1.0)) throw DomainError("--t must be at least 1 for max-convolution powers");
    const LimitLaw target = LimitLaw::max_power(phi_of(LimitLaw::stable_half()), t);
    ExperimentReport rep;
    for (int d : grid_of(o, {100, 200, 400})) {
        const int k = std::max(1, static_cast<int>(std::lround(d / t)));
        Poly phi = phi_d(diff_kd(f_d(d, bits), k));
        double ks = ks_distance(EmpiricalMeasure::of(*phi.known_roots()), target);
        // atoms d/j against 1 - t/x: the staircase misses by exactly 1/k when d/k = t
        rep.rows.push_back(make_ks_row("ks_pareto", d, t, ks, 1.0 / k + std::abs(static_cast<double>(d) / k - t) + kKsSlack));
    }
    return rep;
}

ExperimentReport boxtimes_limit(const ExperimentOptions& o) {
    const int bits = bits_of(o);
    const double t = t_or(o, 0.5), b = 2.0, c = 3.0;
    if (!(t > 0.0 && t < 1.0)) throw DomainError("--t must lie in (0,1)");
    ExperimentReport rep;
    for (int d : grid_of(o, {50, 100, 200, 400})) {
        Poly p = laguerre(d, rd(b, bits), bits), q = laguerre(d, rd(c, bits), bits);
        Poly z = bernoulli_poly(d, d / 2, bits);
        FiniteTransform tp = finite_t(p), tq = finite_t(q), tpq = finite_t(boxtimes(p, q));
        FiniteTransform tz = finite_t(z), tzq = finite_t(boxtimes(z, q));
        Real dev(0L, 53), devz(0L, 53);
        for (int k = 0; k < d; ++k) {
            const auto i = static_cast<std::size_t>(k);
            dev = max(dev, relative_difference(tpq.values[i], tp.values[i] * tq.values[i]));
            devz = max(devz, relative_difference(tzq.values[i], tz.values[i] * tq.values[i]));
        }
        rep.rows.push_back(deviation_row("T multiplicative", d, 0, dev, Metric::Rel, working_tol(bits)));
        rep.rows.push_back(deviation_row("T multiplicative zero roots", d, 0, devz, Metric::Rel, working_tol(bits)));
        const LimitLaw lb = LimitLaw::mp(b), lc = LimitLaw::mp(c);
        Real limit = rd(lb.t_of(t) * lc.t_of(t), bits);
        // each finite T is within 1/d of b-1+t (resp. c-1+t)
        double tol = (lb.t_of(t) + lc.t_of(t)) / d + 1.0 / (static_cast<double>(d) * d);
        rep.rows.push_back(make_row("T limit", d, t, tpq.t_at(t), limit, Metric::Abs, tol));
    }
    return rep;
}

ExperimentReport mp_ks(const ExperimentOptions& o) {
    const double b = 2.0;
    ExperimentReport rep;
    int bits_used = 0;
    for (int d : grid_of(o, {200})) {
        const int bits = root_precision(d, bits_of(o));
        bits_used = std::max(bits_used, bits);
        Poly p = laguerre(d, rd(b, bits), bits);
        double ks = ks_distance(EmpiricalMeasure::of(roots_of(p)), LimitLaw::mp(b));
        // quadrature CDF error budget added explicitly
        rep.rows.push_back(make_ks_row("ks_mp", d, b, ks, 0.05 + 1e-8));
    }
    rep.notes.push_back("precision raised to " + std::to_string(bits_used) + " bits for root extraction");
    rep.metadata.precision_bits = bits_used;
    return rep;
}

}  // namespace

int root_precision(int d, int requested_bits) { return std::max(requested_bits, 3 * d + 64); }

std::vector<Real> random_roots(std::mt19937_64& rng, int d, double lo, double hi, int bits) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out.emplace_back(u(rng), bits);
    return out;
}

const std::vector<ExperimentPreset>& experiment_presets() {
    static const std::vector<ExperimentPreset> presets = {
        {"laguerre_exact", "Laguerre finite S equals 1/(b-(k-1)/d), d=500, b=2", laguerre_exact},
        {"laguerre_mp", "Laguerre finite S at k=ceil(td) converges to S of MP_b", laguerre_mp},
        {"hermite_exact", "Hermite symmetric S equals 1/sqrt(k/d-1/(2d)), d=100", hermite_exact},
        {"chebyshev_exact", "Chebyshev T/U symmetric S closed forms, d=100", chebyshev_exact},
        {"cumulant_scaling", "cumulants of D_{j,d}p scale by (j/d)^(n-1), d=24", cumulant_scaling},
        {"diff_commute", "D_{k,d} commutes with both convolutions bit-exactly, d=30", diff_commute},
        {"order", "boxplus, boxtimes and D_{k,d} preserve the root order, d=40", order},
        {"s_algebra", "finite S multiplicativity, reversal, extreme values, derivatives and shifts", s_algebra},
        {"thm13", "Phi_d of Laguerre is the uniform staircase on [b-1,b]", thm13},
        {"jacobi_edges", "extreme Jacobi roots approach L-(a,b), L+(a,b) for (a,b)=(4,1.5)", jacobi_edges_preset},
        {"bernoulli_edges", "max root of D_{k,d} Bernoulli approaches alpha+(t,u)", bernoulli_edges},
        {"maxconv_identity", "Phi_k(D_{k,d}p) equals the max-convolution power of Phi_d(p), d=50", maxconv_identity},
        {"theta_identity", "Theta identity and the f_k lemma at d=36", theta_identity},
        {"poisson", "finite multiplicative Poisson S converges to exp(lambda/(beta-t))", poisson},
        {"stable_half", "f_d finite S is k/d; H boxtimes f has S~^2 = -k/d", stable_half},
        {"stable_23", "symmetric finite 2/3-stable S~ converges to sqrt(t)", stable_23},
        {"mc", "Monte-Carlo expected characteristic polynomials match both convolutions", mc_preset},
        {"coeff_limit", "Laguerre b=1 coefficients: e_k^(1/d) converges to exp(-int log S)", coeff_limit},
        {"maxconv", "Phi_k(D_{k,d} f_d) approaches the Pareto law of index d/k in KS", maxconv},
        {"boxtimes_limit", "T-transform multiplicativity and the Laguerre product limit", boxtimes_limit},
        {"mp_ks", "Laguerre roots against MP_b in KS distance, d=200, b=2", mp_ks},
    };
    return presets;
}

const ExperimentPreset* find_preset(const std::string& id) {
    for (const auto& p : experiment_presets())
        if (p.id == id) return &p;
    return nullptr;
}

ExperimentReport run_experiment(const std::string& id, const ExperimentOptions& opts) {
    const ExperimentPreset* preset = find_preset(id);
    if (!preset) throw DomainError("unknown experiment id '" + id + "'");
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport rep = preset->run(opts);
    rep.experiment_id = id;
    if (rep.metadata.precision_bits == 0) {
        rep.metadata.precision_bits = opts.precision_bits.value_or(default_precision_bits());
    }
    rep.metadata.seed = opts.seed;
    rep.metadata.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.sort_rows();
    if (opts.override_tol) rep.override_tolerance(*opts.override_tol);
    return rep;
}

}  // namespace finfree
