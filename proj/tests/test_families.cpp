#include <doctest.h>

#include <random>

#include "finfree/convolutions.hpp"
#include "finfree/errors.hpp"
#include "finfree/families.hpp"
#include "finfree/transforms.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace finfree;
using th::kBits;
using th::Q;
using th::R;

namespace {

const double kTol = th::working_tol();

Real rl(long v) { return Real(v, kBits); }

}  // namespace

TEST_CASE("hgp without parameters is the multiplicative identity") {
    Poly p = hgp(HGParams::from_values(9, {}, {}), kBits);
    for (const auto& c : p.coeffs()) CHECK(c == 1L);
}

TEST_CASE("Bernoulli polynomial: hgp and from_roots agree bit for bit") {
    for (int d : {1, 5, 17, 40}) {
        for (int l = 0; l <= d; l += std::max(1, d / 4)) {
            std::vector<Real> r;
            for (int i = 0; i < d; ++i) r.emplace_back(i < l ? 1L : 0L, kBits);
            CHECK(bernoulli_poly(d, l, kBits).coeffs() == from_roots(r, kBits).coeffs());
        }
    }
    CHECK_THROWS_AS(bernoulli_poly(4, 5, kBits), DomainError);
}

TEST_CASE("scaled Bernoulli polynomial") {
    Poly p = bernoulli_poly(6, 2, R(3), kBits);
    RootSet r = roots(p);
    // a double root is only determined to about the square root of the precision
    CHECK(th::absdiff(r[0], R(3)) < 1e-30);
    CHECK(th::absdiff(r[1], R(3)) < 1e-30);
    CHECK(p.trailing_zeros() == 4);
}

TEST_CASE("hgp finite S closed form") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(1.5, 4.0);
    for (int trial = 0; trial < 5; ++trial) {
        const int d = 10 + 7 * trial;
        // Jacobi (unit interval region) boxtimes Laguerre keeps the roots nonnegative
        const double b = u(rng);
        HGParams hp = HGParams::from_values(d, {R(b + 1.0 + u(rng))}, {R(b), R(u(rng))});
        FiniteTransform s = finite_s(hgp(hp, kBits));
        auto want = hgp_s_closed_form(hp, kBits);
        for (int k = 0; k < d; ++k) CHECK(th::rel(s.values[static_cast<std::size_t>(k)], want[static_cast<std::size_t>(k)]) <= 1e-60);
    }
}

TEST_CASE("excluded lower parameters are rejected") {
    CHECK_THROWS_AS(HGParams::from_values(5, {Q(2, 5)}, {}), DomainError);
    CHECK_THROWS_AS(HGParams::from_values(5, {R(0)}, {}), DomainError);
    CHECK_NOTHROW(HGParams::from_values(5, {R(1)}, {}));
    CHECK_NOTHROW(HGParams::from_values(5, {R(-0.2)}, {}));
}

TEST_CASE("derivatives of Jacobi polynomials are Jacobi polynomials") {
    const int d = 30;
    const Real b = R(1.5), a = R(4);
    Poly p = jacobi(d, b, a, kBits);
    for (int k : {3, 10, 29}) {
        Poly got = diff_kd(p, k);
        Real kk = rl(k);
        Poly want = jacobi(k, b * static_cast<long>(d) / kk, a * static_cast<long>(d) / kk, kBits);
        CHECK(th::max_rel(got.coeffs(), want.coeffs()) <= kTol);
    }
}

TEST_CASE("derivatives of f_d are dilated f_k") {
    const int d = 24;
    Poly f = f_d(d, kBits);
    for (int k = 1; k <= d; ++k) {
        Poly got = dilate(diff_kd(f, k), Q(k, d));
        CHECK(th::max_rel(got.coeffs(), f_d(k, kBits).coeffs()) <= kTol);
    }
}

TEST_CASE("Laguerre, Bessel and Jacobi regions give nonnegative real roots") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        const int d = 12;
        Real b = R(1.2 + 2 * u(rng));
        Real a1 = b + 1L + R(0.1 + 3 * u(rng));
        Real a2 = R(-0.3 - 2 * u(rng));
        Real b3 = a2 - 1L - R(0.2 + u(rng));
        CHECK(jacobi_region(b, a1) == JacobiRegion::UnitInterval);
        CHECK(jacobi_region(b, a2) == JacobiRegion::PositiveReflected);
        CHECK(jacobi_region(b3, a2) == JacobiRegion::Positive);
        for (Poly p : {jacobi(d, b, a1, kBits), jacobi(d, b, a2, kBits), jacobi(d, b3, a2, kBits), laguerre(d, b, kBits),
                       bessel(d, a2, kBits)}) {
            CHECK(has_nonnegative_coeffs(p));
            RootSet r = roots_of(p);
            CHECK(r.smallest() >= 0L);
        }
        RootSet unit = roots_of(jacobi(d, b, a1, kBits));
        CHECK(unit.largest() <= 1L);
    }
    CHECK(jacobi_region(R(0.5), R(3)) == JacobiRegion::Outside);
    CHECK(laguerre_in_region(10, R(0.95)));
    CHECK_FALSE(laguerre_in_region(10, R(0.85)));
    CHECK(bessel_in_region(R(-1)));
    CHECK_FALSE(bessel_in_region(R(0.5)));
}

TEST_CASE("Bernoulli derivative edges are symmetric in k and l") {
    const int d = 30;
    for (auto [k, l] : {std::pair{5, 12}, std::pair{9, 20}, std::pair{14, 14}, std::pair{3, 27}}) {
        Real a = max_root(diff_kd(bernoulli_poly(d, l, kBits), k));
        Real b = max_root(diff_kd(bernoulli_poly(d, k, kBits), l));
        CHECK(th::rel(a, b) <= 1e-50);
    }
}

TEST_CASE("Hermite H_2 and the Hermite/Chebyshev roots") {
    SymPoly h2 = hermite(2, kBits);
    CHECK(h2.inner().coeff(1).is_zero());
    CHECK(th::absdiff(h2.inner().coeff(2), R(-0.5)) == 0.0);  // x^2 - 1/2
    RootSet r = roots_of(h2.inner());
    CHECK(th::rel(r[0], sqrt(R(0.5))) < 1e-60);

    for (int d2 : {2, 6, 20}) {
        RootSet t = roots_of(chebyshev_t(d2, kBits).inner());
        RootSet u = roots_of(chebyshev_u(d2, kBits).inner());
        auto tn = oracle::chebyshev_t_nodes(d2), un = oracle::chebyshev_u_nodes(d2);
        for (int j = 0; j < d2; ++j) {
            CHECK(std::abs(t[static_cast<std::size_t>(j)].to_double() - tn[static_cast<std::size_t>(j)]) <= 1e-12);
            CHECK(std::abs(u[static_cast<std::size_t>(j)].to_double() - un[static_cast<std::size_t>(j)]) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(hermite(5, kBits), DomainError);
    CHECK_THROWS_AS(chebyshev_t(0, kBits), DomainError);
}

TEST_CASE("Poisson base polynomial") {
    Poly p = poisson_base(4, R(2), kBits);
    const double want[] = {1, 7.0 / 8, 6.0 / 8, 5.0 / 8, 4.0 / 8};
    for (int k = 0; k <= 4; ++k) CHECK(th::absdiff(p.coeff(k), R(want[k])) == 0.0);
    Poly q = from_roots(std::vector<Real>{R(0.5), R(1), R(1), R(1)}, kBits);
    CHECK(th::max_rel(p.coeffs(), q.coeffs()) <= kTol);

    const int d = 50;
    const long n = 7;
    Poly base = poisson_base(d, R(2), kBits);
    FiniteTransform s = finite_s(base), sn = finite_s(boxtimes_power(base, n));
    for (int k = 1; k <= d; ++k) {
        Real one = 1L + 1L / (R(2) * static_cast<long>(d) - static_cast<long>(k));
        CHECK(th::rel(s.values[static_cast<std::size_t>(k - 1)], one) <= kTol);
        CHECK(th::rel(sn.values[static_cast<std::size_t>(k - 1)], pow(one, n)) <= kTol);
    }
    CHECK_THROWS_AS(poisson_base(4, R(0.5), kBits), DomainError);
}
