#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "finfree/errors.hpp"
#include "finfree/poly.hpp"

namespace finfree {

namespace {

constexpr int kMaxIterations = 500;
constexpr int kCompanionMaxDegree = 64;
constexpr int kPolishSweeps = 60;

using cld = std::complex<long double>;

struct Deflated {
    std::vector<Real> a;  // monic, highest degree first, a[0] = 1
    int zeros = 0;
};

Deflated deflate(const Poly& p) {
    Deflated out;
    out.zeros = p.trailing_zeros();
    auto a = p.monomial_coeffs();
    a.resize(a.size() - static_cast<std::size_t>(out.zeros));
    out.a = std::move(a);
    return out;
}

std::vector<cld> companion_guesses(const std::vector<Real>& a) {
    const int m = static_cast<int>(a.size()) - 1;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
        double v = a[static_cast<std::size_t>(j) + 1].to_double();
        if (!std::isfinite(v)) return {};
        c(0, j) = -v;
    }
    for (int i = 1; i < m; ++i) c(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
    if (es.info() != Eigen::Success) return {};
    std::vector<cld> z;
    const auto& ev = es.eigenvalues();
    for (int i = 0; i < m; ++i) {
        if (!std::isfinite(ev[i].real()) || !std::isfinite(ev[i].imag())) return {};
        z.emplace_back(ev[i].real(), ev[i].imag());
    }
    // break exact realness and exact coincidences so the iteration can move off the axis
    for (int i = 0; i < m; ++i) {
        long double nudge = 1e-7L * (1.0L + std::abs(z[static_cast<std::size_t>(i)]));
        z[static_cast<std::size_t>(i)] += cld(nudge * (i + 1) * 1e-3L, (i % 2 == 0 ? 1 : -1) * nudge);
    }
    return z;
}

std::vector<cld> circle_guesses(const Poly& p, int m) {
    const int d = p.degree();
    long double radius = 0.0L;
    for (int k = 1; k <= d; ++k) {
        const Real& e = p.coeff(k);
        if (e.is_zero()) continue;
        // |e_k|^(1/k) through logs so huge coefficients cannot overflow
        long exp2 = 0;
        double mant = mpfr_get_d_2exp(&exp2, e.get(), MPFR_RNDN);
        long double lg = (std::log(std::fabs(mant)) + static_cast<long double>(exp2) * std::numbers::ln2_v<long double>) / k;
        radius = std::max(radius, std::exp(lg));
    }
    radius += 1.0L;
    long double center = p.coeff(1).to_long_double();
    std::vector<cld> z;
    for (int j = 0; j < m; ++j) {
        long double ang = 2.0L * std::numbers::pi_v<long double> * j / m + 0.4L;
        z.emplace_back(center + radius * std::cos(ang), radius * std::sin(ang));
    }
    return z;
}

// Aberth sweep in hardware extended precision; returns false if the
// coefficients do not fit the long double range.
bool aberth_long_double(const std::vector<Real>& ar, std::vector<cld>& z) {
    const int m = static_cast<int>(ar.size()) - 1;
    std::vector<long double> a(ar.size()), aa(ar.size());
    for (std::size_t k = 0; k < ar.size(); ++k) {
        a[k] = ar[k].to_long_double();
        if (!std::isfinite(a[k])) return false;
        aa[k] = std::fabs(a[k]);
    }
    const long double eps = std::numeric_limits<long double>::epsilon();
    const long double stop = 8.0L * m * eps;
    std::vector<char> done(static_cast<std::size_t>(m), 0);
    for (int it = 0; it < kMaxIterations; ++it) {
        bool all = true;
        for (int i = 0; i < m; ++i) {
            auto& zi = z[static_cast<std::size_t>(i)];
            if (done[static_cast<std::size_t>(i)]) continue;
            cld pv = 1.0L, dp = 0.0L;
            long double s = 1.0L, az = std::abs(zi);
            for (int k = 1; k <= m; ++k) {
                dp = dp * zi + pv;
                pv = pv * zi + a[static_cast<std::size_t>(k)];
                s = s * az + aa[static_cast<std::size_t>(k)];
            }
            if (!std::isfinite(s) || !std::isfinite(std::abs(pv))) return false;
            if (std::abs(pv) <= stop * s) {
                done[static_cast<std::size_t>(i)] = 1;
                continue;
            }
            all = false;
            cld sum = 0.0L;
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                cld diff = zi - z[static_cast<std::size_t>(j)];
                if (diff != 0.0L) sum += 1.0L / diff;
            }
            if (dp == 0.0L) {
                zi += cld(eps * (1.0L + az), eps * (1.0L + az));
                continue;
            }
            cld n = pv / dp;
            zi -= n / (1.0L - n * sum);
        }
        if (all) break;
    }
    return true;
}

// Complex workspace on MPFR values used by the multiprecision sweeps.
struct Mz {
    Real re, im;
    explicit Mz(int bits) : re(0L, bits), im(0L, bits) {}
};

class MpAberth {
public:
    MpAberth(const std::vector<Real>& coeffs, int bits)
        : bits_(bits), m_(static_cast<int>(coeffs.size()) - 1),
          pr_(0L, bits), pi_(0L, bits), dr_(0L, bits), di_(0L, bits), t1_(0L, bits), t2_(0L, bits),
          s_(0L, bits), az_(0L, bits), sr_(0L, bits), si_(0L, bits), nr_(0L, bits), ni_(0L, bits),
          xr_(0L, bits), xi_(0L, bits), q_(0L, bits) {
        for (const auto& c : coeffs) {
            a_.push_back(c.rounded(bits));
            aa_.push_back(abs(a_.back()));
        }
    }

    // Evaluates p and p' at z; also the modulus bound s = sum |a_k| |z|^(m-k).
    void eval(const Mz& z) {
        mpfr_set_ui(pr_.get(), 1, MPFR_RNDN);
        mpfr_set_zero(pi_.get(), 1);
        mpfr_set_zero(dr_.get(), 1);
        mpfr_set_zero(di_.get(), 1);
        mpfr_set_ui(s_.get(), 1, MPFR_RNDN);
        mpfr_hypot(az_.get(), z.re.get(), z.im.get(), MPFR_RNDN);
        for (int k = 1; k <= m_; ++k) {
            // dp = dp*z + p
            mpfr_fmms(t1_.get(), dr_.get(), z.re.get(), di_.get(), z.im.get(), MPFR_RNDN);
            mpfr_fmma(t2_.get(), dr_.get(), z.im.get(), di_.get(), z.re.get(), MPFR_RNDN);
            mpfr_add(dr_.get(), t1_.get(), pr_.get(), MPFR_RNDN);
            mpfr_add(di_.get(), t2_.get(), pi_.get(), MPFR_RNDN);
            // p = p*z + a_k
            mpfr_fmms(t1_.get(), pr_.get(), z.re.get(), pi_.get(), z.im.get(), MPFR_RNDN);
            mpfr_fmma(t2_.get(), pr_.get(), z.im.get(), pi_.get(), z.re.get(), MPFR_RNDN);
            mpfr_add(pr_.get(), t1_.get(), a_[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
            mpfr_swap(pi_.get(), t2_.get());
            mpfr_fma(s_.get(), s_.get(), az_.get(), aa_[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
        }
    }

    // relative residual |p(z)| / s after eval
    double residual() {
        mpfr_hypot(t1_.get(), pr_.get(), pi_.get(), MPFR_RNDN);
        mpfr_div(t1_.get(), t1_.get(), s_.get(), MPFR_RNDN);
        return mpfr_get_d(t1_.get(), MPFR_RNDN);
    }

    bool residual_below(const Real& factor) {
        mpfr_hypot(t1_.get(), pr_.get(), pi_.get(), MPFR_RNDN);
        mpfr_mul(t2_.get(), s_.get(), factor.get(), MPFR_RNDN);
        return mpfr_lessequal_p(t1_.get(), t2_.get()) != 0;
    }

    // Runs until every approximation meets |p(z)| <= factor * s. Returns true on success.
    bool run(std::vector<Mz>& z, const Real& factor, int max_iter) {
        std::vector<char> done(static_cast<std::size_t>(m_), 0);
        for (int it = 0; it < max_iter; ++it) {
            bool all = true;
            for (int i = 0; i < m_; ++i) {
                if (done[static_cast<std::size_t>(i)]) continue;
                Mz& zi = z[static_cast<std::size_t>(i)];
                eval(zi);
                if (residual_below(factor)) {
                    done[static_cast<std::size_t>(i)] = 1;
                    continue;
                }
                all = false;
                step(z, i);
            }
            if (all) return true;
        }
        for (int i = 0; i < m_; ++i) {
            eval(z[static_cast<std::size_t>(i)]);
            if (!residual_below(factor)) return false;
        }
        return true;
    }

    std::vector<double> residuals(const std::vector<Mz>& z) {
        std::vector<double> out;
        for (const auto& zi : z) {
            eval(zi);
            out.push_back(residual());
        }
        return out;
    }

    // Residual of the real projection x = Re z.
    bool real_projection_ok(const Real& x, const Real& factor) {
        mpfr_set_ui(pr_.get(), 1, MPFR_RNDN);
        mpfr_set_ui(s_.get(), 1, MPFR_RNDN);
        mpfr_abs(az_.get(), x.get(), MPFR_RNDN);
        for (int k = 1; k <= m_; ++k) {
            mpfr_fma(pr_.get(), pr_.get(), x.get(), a_[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
            mpfr_fma(s_.get(), s_.get(), az_.get(), aa_[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
        }
        mpfr_abs(t1_.get(), pr_.get(), MPFR_RNDN);
        mpfr_mul(t2_.get(), s_.get(), factor.get(), MPFR_RNDN);
        return mpfr_lessequal_p(t1_.get(), t2_.get()) != 0;
    }

private:
    // One Aberth correction of z[i]; expects eval(z[i]) to have been called.
    void step(std::vector<Mz>& z, int i) {
        Mz& zi = z[static_cast<std::size_t>(i)];
        if (mpfr_zero_p(dr_.get()) && mpfr_zero_p(di_.get())) {
            mpfr_nextabove(zi.re.get());
            mpfr_nextabove(zi.im.get());
            return;
        }
        // n = p / p'
        mpfr_fmma(q_.get(), dr_.get(), dr_.get(), di_.get(), di_.get(), MPFR_RNDN);
        mpfr_fmma(t1_.get(), pr_.get(), dr_.get(), pi_.get(), di_.get(), MPFR_RNDN);
        mpfr_fmms(t2_.get(), pi_.get(), dr_.get(), pr_.get(), di_.get(), MPFR_RNDN);
        mpfr_div(nr_.get(), t1_.get(), q_.get(), MPFR_RNDN);
        mpfr_div(ni_.get(), t2_.get(), q_.get(), MPFR_RNDN);
        // sum_j 1 / (z_i - z_j)
        mpfr_set_zero(sr_.get(), 1);
        mpfr_set_zero(si_.get(), 1);
        for (int j = 0; j < m_; ++j) {
            if (j == i) continue;
            const Mz& zj = z[static_cast<std::size_t>(j)];
            mpfr_sub(xr_.get(), zi.re.get(), zj.re.get(), MPFR_RNDN);
            mpfr_sub(xi_.get(), zi.im.get(), zj.im.get(), MPFR_RNDN);
            mpfr_fmma(q_.get(), xr_.get(), xr_.get(), xi_.get(), xi_.get(), MPFR_RNDN);
            if (mpfr_zero_p(q_.get())) continue;
            mpfr_div(xr_.get(), xr_.get(), q_.get(), MPFR_RNDN);
            mpfr_div(xi_.get(), xi_.get(), q_.get(), MPFR_RNDN);
            mpfr_add(sr_.get(), sr_.get(), xr_.get(), MPFR_RNDN);
            mpfr_sub(si_.get(), si_.get(), xi_.get(), MPFR_RNDN);
        }
        // w = n / (1 - n * sum)
        mpfr_fmms(xr_.get(), nr_.get(), sr_.get(), ni_.get(), si_.get(), MPFR_RNDN);
        mpfr_fmma(xi_.get(), nr_.get(), si_.get(), ni_.get(), sr_.get(), MPFR_RNDN);
        mpfr_ui_sub(xr_.get(), 1, xr_.get(), MPFR_RNDN);
        mpfr_neg(xi_.get(), xi_.get(), MPFR_RNDN);
        mpfr_fmma(q_.get(), xr_.get(), xr_.get(), xi_.get(), xi_.get(), MPFR_RNDN);
        if (mpfr_zero_p(q_.get())) return;
        mpfr_fmma(t1_.get(), nr_.get(), xr_.get(), ni_.get(), xi_.get(), MPFR_RNDN);
        mpfr_fmms(t2_.get(), ni_.get(), xr_.get(), nr_.get(), xi_.get(), MPFR_RNDN);
        mpfr_div(t1_.get(), t1_.get(), q_.get(), MPFR_RNDN);
        mpfr_div(t2_.get(), t2_.get(), q_.get(), MPFR_RNDN);
        mpfr_sub(zi.re.get(), zi.re.get(), t1_.get(), MPFR_RNDN);
        mpfr_sub(zi.im.get(), zi.im.get(), t2_.get(), MPFR_RNDN);
    }

    int bits_;
    int m_;
    std::vector<Real> a_, aa_;
    Real pr_, pi_, dr_, di_, t1_, t2_, s_, az_, sr_, si_, nr_, ni_, xr_, xi_, q_;
};

}  // namespace

Real default_root_tolerance(int precision_bits) { return Real::exp2i(32 - precision_bits, precision_bits); }

RootSet roots_of(const Poly& p) { return roots_of(p, default_root_tolerance(p.precision_bits())); }

RootSet roots_of(const Poly& p, const Real& tol) {
    const int bits = p.precision_bits();
    Deflated df = deflate(p);
    const int m = static_cast<int>(df.a.size()) - 1;
    std::vector<Real> values;
    values.reserve(static_cast<std::size_t>(p.degree()));

    if (m == 1) {
        values.push_back(-df.a[1]);
    } else if (m > 1) {
        std::vector<cld> start;
        if (m <= kCompanionMaxDegree) start = companion_guesses(df.a);
        if (start.empty()) start = circle_guesses(p, m);
        aberth_long_double(df.a, start);

        std::vector<Mz> z;
        z.reserve(static_cast<std::size_t>(m));
        for (const auto& s : start) {
            Mz v(bits);
            mpfr_set_ld(v.re.get(), s.real(), MPFR_RNDN);
            mpfr_set_ld(v.im.get(), s.imag(), MPFR_RNDN);
            z.push_back(std::move(v));
        }

        // precision ladder: noise-level convergence at each rung, final rung at full precision
        std::vector<int> ladder;
        for (int b = 128; b < bits; b *= 2) ladder.push_back(b);
        for (int b : ladder) {
            std::vector<Mz> zs;
            for (const auto& v : z) {
                Mz w(b);
                mpfr_set(w.re.get(), v.re.get(), MPFR_RNDN);
                mpfr_set(w.im.get(), v.im.get(), MPFR_RNDN);
                zs.push_back(std::move(w));
            }
            MpAberth stage(df.a, b);
            Real factor = Real::exp2i(-b, b) * static_cast<long>(8 * m);
            stage.run(zs, factor, kMaxIterations);
            for (std::size_t i = 0; i < z.size(); ++i) {
                mpfr_set(z[i].re.get(), zs[i].re.get(), MPFR_RNDN);
                mpfr_set(z[i].im.get(), zs[i].im.get(), MPFR_RNDN);
            }
        }

        MpAberth fin(df.a, bits);
        Real factor = tol.rounded(bits);
        if (!fin.run(z, factor, kMaxIterations))
            throw ConvergenceError("roots_of: no convergence after " + std::to_string(kMaxIterations) + " iterations",
                                   fin.residuals(z));
        // Polish with guard bits. The coefficients are exact at the wider
        // precision, so the sweeps get below the working-precision evaluation
        // noise; close root pairs gain the most.
        {
            const int guard = 2 * bits;
            std::vector<Mz> zg;
            zg.reserve(z.size());
            for (const auto& v : z) {
                Mz w(guard);
                mpfr_set(w.re.get(), v.re.get(), MPFR_RNDN);
                mpfr_set(w.im.get(), v.im.get(), MPFR_RNDN);
                zg.push_back(std::move(w));
            }
            MpAberth polish(df.a, guard);
            polish.run(zg, Real::exp2i(-guard, guard) * static_cast<long>(8 * m), kPolishSweeps);
            for (std::size_t i = 0; i < z.size(); ++i) {
                mpfr_set(z[i].re.get(), zg[i].re.get(), MPFR_RNDN);
                mpfr_set(z[i].im.get(), zg[i].im.get(), MPFR_RNDN);
            }
        }

        Real loose = Real::exp2i(-bits / 2, bits);
        for (auto& zi : z) {
            Real im_bound = loose * max(Real(1L, bits), sqrt(zi.re * zi.re + zi.im * zi.im));
            if (abs(zi.im) > im_bound && !fin.real_projection_ok(zi.re, factor))
                throw NotRealRootedError("not real-rooted: complex pair " + zi.re.to_string(10) + " +/- " +
                                             abs(zi.im).to_string(10) + "i",
                                         zi.re.to_double(), zi.im.to_double());
            values.push_back(zi.re);
        }
    }

    Real big(1L, bits);
    for (const auto& v : values) big = max(big, abs(v));
    Real zero_bound = Real::exp2i(-bits / 2, bits) * big;
    for (auto& v : values)
        if (abs(v) <= zero_bound) v = Real(0L, bits);
    for (int i = 0; i < df.zeros; ++i) values.emplace_back(0L, bits);
    return RootSet(std::move(values));
}

namespace {

// Laguerre iteration from a point above the largest root of a real-rooted polynomial.
Real laguerre_from_above(const Poly& p) {
    const int d = p.degree();
    const int bits = p.precision_bits();
    if (d == 1) return p.coeff(1);
    auto a = p.monomial_coeffs();
    const Real& e1 = p.coeff(1);
    Real var = (e1 * e1 - p.coeff(2)) * static_cast<long>(d - 1);
    if (var < 0L) var = Real(0L, bits);
    Real spread = sqrt(var);
    // all roots lie within mean +/- sqrt(d-1) * sigma
    Real x = e1 + spread * sqrt(Real(static_cast<long>(d - 1), bits));
    Real unit = max(spread, max(abs(e1), Real::exp2i(-bits / 2, bits)));
    x += unit * Real(1e-6, bits);
    Real tiny = Real::exp2i(8 - bits, bits) * max(unit, abs(x));

    Real pv(0L, bits), dp(0L, bits), ddp(0L, bits), g(0L, bits), h(0L, bits), disc(0L, bits), step(0L, bits);
    const long n = d;
    for (int it = 0; it < 100000; ++it) {
        mpfr_set_ui(pv.get(), 1, MPFR_RNDN);
        mpfr_set_zero(dp.get(), 1);
        mpfr_set_zero(ddp.get(), 1);
        for (int k = 1; k <= d; ++k) {
            mpfr_fma(ddp.get(), ddp.get(), x.get(), dp.get(), MPFR_RNDN);
            mpfr_fma(dp.get(), dp.get(), x.get(), pv.get(), MPFR_RNDN);
            mpfr_fma(pv.get(), pv.get(), x.get(), a[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
        }
        if (pv.is_zero()) return x;
        ddp *= 2L;
        g = dp / pv;
        h = g * g - ddp / pv;
        disc = (h * n - g * g) * (n - 1);
        if (disc < 0L) disc = Real(0L, bits);
        Real denom = g.sign() >= 0 ? g + sqrt(disc) : g - sqrt(disc);
        if (denom.is_zero()) return x;
        step = Real(n, bits) / denom;
        // from above the iterates decrease; a non-positive step means rounding noise
        if (!(step > 0L)) return x;
        x -= step;
        if (abs(step) <= tiny) return x;
    }
    return x;
}

}  // namespace

Real max_root(const Poly& p) {
    if (p.degree() >= 1 && p.is_monomial()) return Real(0L, p.precision_bits());
    return laguerre_from_above(p.without_known_roots());
}

Real min_root(const Poly& p) {
    if (p.degree() >= 1 && p.is_monomial()) return Real(0L, p.precision_bits());
    return -laguerre_from_above(reflect(p).without_known_roots());
}

}  // namespace finfree
