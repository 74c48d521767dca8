#include <doctest.h>

#include <random>

#include "finfree/convolutions.hpp"
#include "finfree/cumulants.hpp"
#include "finfree/errors.hpp"
#include "finfree/families.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace finfree;
using th::kBits;
using th::R;

namespace {

Poly dirac(int d, double c) { return from_roots(std::vector<Real>(static_cast<std::size_t>(d), R(c)), kBits); }

Poly monomial(int d) {
    std::vector<double> e(static_cast<std::size_t>(d) + 1, 0.0);
    e[0] = 1.0;
    return Poly::from_doubles(e, kBits);
}

}  // namespace

TEST_CASE("identity elements") {
    std::mt19937_64 rng(1);
    Poly p = th::uniform_poly(rng, 9, -3, 3);
    CHECK(boxplus(p, monomial(9)).coeffs() == p.coeffs());
    CHECK(boxplus(monomial(9), p).coeffs() == p.coeffs());
    CHECK(boxtimes(p, dirac(9, 1)).coeffs() == p.coeffs());
}

TEST_CASE("hand evaluations") {
    Poly a = Poly::from_doubles({1, 0, -1}, kBits);  // x^2 - 1
    Poly s = boxplus(a, a);
    CHECK(th::absdiff(s.coeff(1), R(0)) == 0.0);
    CHECK(th::absdiff(s.coeff(2), R(-2)) == 0.0);  // x^2 - 2

    Poly b = from_roots(std::vector<Real>{R(0), R(1)}, kBits);  // x(x-1)
    Poly t = boxtimes(b, b);
    CHECK(th::absdiff(t.coeff(1), R(0.25)) == 0.0);
    CHECK(t.coeff(2).is_zero());
    RootSet r = roots(t);
    CHECK(th::absdiff(r[0], R(0.5)) < 1e-70);
    CHECK(r[1].is_zero());
}

TEST_CASE("boxplus with a Dirac is a shift") {
    std::mt19937_64 rng(2);
    Poly p = th::uniform_poly(rng, 12, -2, 5);
    Poly got = boxplus(p, dirac(12, 1.75));
    RootSet r = roots_of(got.without_known_roots()), want = roots(p);
    for (int i = 0; i < 12; ++i) CHECK(th::absdiff(r[static_cast<std::size_t>(i)], want[static_cast<std::size_t>(i)] + R(1.75)) < 1e-60);
    CHECK(th::max_rel(got.coeffs(), shift(p, R(1.75)).coeffs()) <= th::working_tol());
}

TEST_CASE("boxplus against the derivative formula in exact rationals") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> u(-12, 12);
    for (int d : {2, 3, 5, 8}) {
        std::vector<oracle::Rational> rp, rq;
        std::vector<Real> xp, xq;
        for (int i = 0; i < d; ++i) {
            rp.emplace_back(u(rng), 3);
            rq.emplace_back(u(rng), 5);
            xp.push_back(oracle::to_real(rp.back(), kBits));
            xq.push_back(oracle::to_real(rq.back(), kBits));
        }
        auto want = oracle::normalized(oracle::boxplus_derivative_formula(oracle::monic_from_roots(rp), oracle::monic_from_roots(rq)));
        Poly got = boxplus(from_roots(xp, kBits), from_roots(xq, kBits));
        for (int k = 0; k <= d; ++k) {
            Real w = oracle::to_real(want[static_cast<std::size_t>(k)], kBits);
            CHECK(th::absdiff(got.coeff(k), w) <= th::working_tol() * (1.0 + abs(w).to_double()));
        }
    }
}

TEST_CASE("Bernoulli factor: x^(d-k)(x-1)^k boxtimes p = x^(d-k) D_(k,d) p") {
    std::mt19937_64 rng(3);
    const int d = 14;
    Poly p = th::uniform_poly(rng, d, -4, 4);
    for (int k : {1, 5, 9, 14}) {
        Poly lhs = boxtimes(bernoulli_poly(d, k, kBits), p);
        RootSet lr = roots_of(lhs);
        RootSet dr = roots_of(diff_kd(p, k));
        // the d-k zero roots sit among the sorted roots of D_(k,d) p
        std::vector<Real> want = dr.roots();
        for (int i = 0; i < d - k; ++i) want.emplace_back(0L, kBits);
        RootSet ws{want};
        for (int i = 0; i < d; ++i) CHECK(th::absdiff(lr[static_cast<std::size_t>(i)], ws[static_cast<std::size_t>(i)]) < 1e-50);
        CHECK(lhs.trailing_zeros() >= d - k);
    }
}

TEST_CASE("boxtimes_power") {
    std::mt19937_64 rng(4);
    Poly p = th::uniform_poly(rng, 7, 0, 3);
    CHECK(boxtimes_power(p, 1).coeffs() == p.coeffs());
    CHECK(boxtimes_power(dirac(7, 1), 50).coeffs() == dirac(7, 1).coeffs());
    Poly three = boxtimes(boxtimes(p, p), p);
    CHECK(th::max_rel(boxtimes_power(p, 3).coeffs(), three.coeffs()) <= th::working_tol());
    CHECK_THROWS_AS(boxtimes_power(p, 0), DomainError);
}

TEST_CASE("boxplus_fractional") {
    std::mt19937_64 rng(5);
    Poly p = th::uniform_poly(rng, 6, -2, 3);
    CHECK(boxplus_fractional(p, R(1)).coeffs() == p.coeffs());
    Poly two = boxplus_fractional(p, R(2));
    auto k1 = cumulants(p, 6), k2 = cumulants(two, 6);
    for (int n = 1; n <= 6; ++n) CHECK(abs(k2(n) - k1(n) * 2L).to_double() <= 1e-60 * (1 + abs(k2(n)).to_double()));
    // p boxplus p = p^(boxplus 2) at equal degree
    CHECK(th::max_rel(boxplus(p, p).coeffs(), two.coeffs()) <= 1e-60);

    // derivative path: degree-3 cumulants of Dil_2 D_(3,6) p equal the degree-6
    // cumulants of p^(boxplus 2) for n <= 3
    Poly via = boxplus_fractional_via_derivative(p, 3);
    auto kv = cumulants(via, 3);
    for (int n = 1; n <= 3; ++n) CHECK(th::rel(kv(n), k2(n)) <= 1e-60);

    CHECK_THROWS_AS(boxplus_fractional(p, R(0.5)), DomainError);
    CHECK_THROWS_AS(boxplus_fractional(th::uniform_poly(rng, 13, 0, 1), R(2)), DomainError);
}

TEST_CASE("max_power") {
    Poly p = from_roots(std::vector<Real>{R(3), R(2), R(1)}, kBits);
    CHECK(max_power(p, 3).coeffs() == p.coeffs());
    RootSet r = roots(max_power(p, 2));
    REQUIRE(r.degree() == 2);
    CHECK(r[0] == 3L);
    CHECK(r[1] == 2L);
    CHECK_THROWS_AS(max_power(p, 0), DomainError);
}

TEST_CASE("degree mismatch is rejected") {
    CHECK_THROWS_AS(boxplus(dirac(3, 1), dirac(4, 1)), DomainError);
    CHECK_THROWS_AS(boxtimes(dirac(3, 1), dirac(4, 1)), DomainError);
}

TEST_CASE("max root of boxtimes is bounded by the product of max roots") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        Poly p = th::uniform_poly(rng, 10, 0, 3), q = th::uniform_poly(rng, 10, 0, 5);
        CHECK(max_root(boxtimes(p, q)) <= roots(p).largest() * roots(q).largest() * (1 + 1e-30));
    }
}
