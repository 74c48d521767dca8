#include <doctest.h>

#include <random>

#include "finfree/convolutions.hpp"
#include "finfree/empirics.hpp"
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

Poly dirac(int d, double c) { return from_roots(std::vector<Real>(static_cast<std::size_t>(d), R(c)), kBits); }

const double kTol = th::working_tol();

}  // namespace

TEST_CASE("finite S of a Dirac polynomial is constant") {
    FiniteTransform s = finite_s(dirac(11, 2.5));
    REQUIRE(s.values.size() == 11);
    for (int k = 1; k <= 11; ++k) {
        CHECK(th::rel(s.values[static_cast<std::size_t>(k - 1)], Q(2, 5)) <= kTol);
        CHECK(th::rel(s.grid[static_cast<std::size_t>(k - 1)], -Q(k, 11)) <= kTol);
    }
}

TEST_CASE("finite S of Laguerre and of f_d") {
    const int d = 40;
    FiniteTransform s = finite_s(laguerre(d, R(2), kBits));
    for (int k = 1; k <= d; ++k)
        CHECK(th::rel(s.values[static_cast<std::size_t>(k - 1)], 1L / (R(2) - Q(k - 1, d))) <= kTol);
    FiniteTransform f = finite_s(f_d(d, kBits));
    for (int k = 1; k <= d; ++k) CHECK(th::rel(f.values[static_cast<std::size_t>(k - 1)], Q(k, d)) <= kTol);
}

TEST_CASE("finite S is undefined for x^d and stops at the zero roots") {
    CHECK_THROWS_AS(finite_s(Poly::from_doubles({1, 0, 0, 0}, kBits)), DomainError);
    Poly p = from_roots(std::vector<Real>{R(3), R(1), R(0), R(0)}, kBits);
    FiniteTransform s = finite_s(p);
    CHECK(s.r == 2);
    CHECK(s.values.size() == 2);
}

TEST_CASE("finite T: monomial, Dirac, Laguerre grid") {
    FiniteTransform z = finite_t(Poly::from_doubles({1, 0, 0, 0}, kBits));
    for (const auto& v : z.values) CHECK(v.is_zero());
    FiniteTransform c = finite_t(dirac(6, 1.5));
    for (const auto& v : c.values) CHECK(th::rel(v, R(1.5)) <= kTol);

    const int d = 20;
    const double b = 2.0;
    FiniteTransform t = finite_t(laguerre(d, R(b), kBits));
    REQUIRE(t.values.size() == static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) {
        CHECK(th::rel(t.grid[static_cast<std::size_t>(k - 1)], Q(k - 1, d)) <= kTol);
        CHECK(th::rel(t.values[static_cast<std::size_t>(k - 1)], R(b) - Q(d - k, d)) <= kTol);
    }
    // right-continuous steps: the value on [(k-1)/d, k/d)
    CHECK(t.t_at(0.001) == t.values[0]);
    CHECK(t.t_at(0.05) == t.values[1]);
    CHECK(t.t_at(0.049) == t.values[0]);
    CHECK(t.t_at(0.999) == t.values[static_cast<std::size_t>(d - 1)]);
}

TEST_CASE("finite T vanishes below the zero-root fraction") {
    Poly p = from_roots(std::vector<Real>{R(3), R(2), R(0), R(0), R(0)}, kBits);
    FiniteTransform t = finite_t(p);
    CHECK(t.r == 3);
    for (int k = 1; k <= 3; ++k) CHECK(t.values[static_cast<std::size_t>(k - 1)].is_zero());
    CHECK(t.values[3] > 0L);
}

TEST_CASE("symmetric S of Hermite, Chebyshev T and U") {
    const int d = 50;
    FiniteTransform h = finite_s_symmetric(hermite(2 * d, kBits));
    FiniteTransform ct = finite_s_symmetric(chebyshev_t(2 * d, kBits));
    FiniteTransform cu = finite_s_symmetric(chebyshev_u(2 * d, kBits));
    REQUIRE(h.values.size() == static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        CHECK(th::rel(h.values[i], 1L / sqrt(Q(k, d) - Q(1, 2 * d))) <= kTol);
        CHECK(th::rel(ct.values[i], sqrt(Q(2 * (2 * d - k), 2 * k - 1))) <= kTol);
        CHECK(th::rel(cu.values[i], sqrt(Q(2 * (2 * d + 1 - k), 2 * k - 1))) <= kTol);
    }
}

TEST_CASE("symmetric S of x^2(x^2-1) from the expanded coefficients") {
    std::vector<oracle::Rational> rq{1, 0, 0, -1};
    auto e = oracle::normalized(oracle::monic_from_roots(rq));
    std::vector<Real> xs{R(1), R(0), R(0), R(-1)};
    SymPoly sp(from_roots(xs, kBits));
    FiniteTransform s = finite_s_symmetric(sp);
    REQUIRE(s.values.size() == 1);
    Real want = sqrt(oracle::to_real(-e[0] / e[2], kBits));
    CHECK(th::rel(s.values[0], want) <= kTol);
    CHECK(th::rel(s.values[0], sqrt(R(6))) <= kTol);
}

TEST_CASE("phi_d basics") {
    Poly fixed = phi_d(dirac(9, 1.25).without_known_roots());
    for (const auto& r : fixed.known_roots()->roots()) CHECK(th::rel(r, R(1.25)) <= kTol);
    const int d = 30;
    Poly lag = phi_d(laguerre(d, R(2), kBits));
    const RootSet& lr = *lag.known_roots();
    for (int k = 1; k <= d; ++k) CHECK(th::rel(lr[static_cast<std::size_t>(k - 1)], R(2) - Q(k - 1, d)) <= kTol);
    std::mt19937_64 rng(3);
    const Poly ph = phi_d(th::uniform_poly(rng, 25, 0, 4));
    const RootSet& rr = *ph.known_roots();
    for (int i = 1; i < 25; ++i) CHECK(rr[static_cast<std::size_t>(i)] <= rr[static_cast<std::size_t>(i - 1)]);
}

TEST_CASE("phi_d keeps zero roots at the bottom") {
    Poly p = from_roots(std::vector<Real>{R(3), R(1), R(0)}, kBits);
    const Poly ph = phi_d(p);
    const RootSet& r = *ph.known_roots();
    CHECK(r.zero_multiplicity() == 1);
    CHECK(r[2].is_zero());
}

TEST_CASE("theta_d of the multiplicative identity") {
    for (int d = 1; d <= 8; ++d) {
        // f_d has e_k = d^k / k!, so Theta_d((x-1)^d) has roots d/k
        Poly fd = f_d(d, kBits);
        for (int k = 0; k <= d; ++k) {
            oracle::Rational e = 1;
            for (int i = 1; i <= k; ++i) e *= oracle::Rational(d, i);
            CHECK(th::rel(fd.coeff(k), oracle::to_real(e, kBits)) <= kTol);
        }
        Poly th_id = theta_d(dirac(d, 1));
        const RootSet& r = *th_id.known_roots();
        for (int k = 1; k <= d; ++k) CHECK(th::rel(r[static_cast<std::size_t>(k - 1)], Q(d, k)) <= kTol);
        CHECK(max_power(th_id, d).coeffs() == th_id.coeffs());
    }
}

TEST_CASE("theta formula at d = 12, k = 4") {
    std::mt19937_64 rng(12);
    const int d = 12, k = 4;
    for (int trial = 0; trial < 3; ++trial) {
        Poly p = th::uniform_poly(rng, d, 0.1, 3);
        Poly lhs = theta_d(dilate(diff_kd(p, k), R(3)));
        Poly rhs = max_power(theta_d(p), k);
        CHECK(th::max_rel(lhs.known_roots()->roots(), rhs.known_roots()->roots()) <= kTol);
    }
}

TEST_CASE("coeff_geometric_limit") {
    CHECK(th::rel(coeff_geometric_limit(dirac(6, 2), 3), sqrt(R(2))) <= kTol);
    Poly b = from_roots(std::vector<Real>{R(0), R(1)}, kBits);
    CHECK(th::rel(coeff_geometric_limit(b, 1), sqrt(R(0.5))) <= kTol);
    double got = coeff_geometric_limit(laguerre(400, R(1), kBits), 200).to_double();
    CHECK(std::abs(got - std::exp(-oracle::log_integral(0.5))) <= 0.01);
}

TEST_CASE("S multiplicativity, extreme values and reversal") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 5 + trial * 4;
        Poly p = th::uniform_poly(rng, d, 0.1, 6), q = th::uniform_poly(rng, d, 0.5, 2);
        FiniteTransform sp = finite_s(p), sq = finite_s(q), spq = finite_s(boxtimes(p, q));
        for (int k = 0; k < d; ++k) {
            const auto i = static_cast<std::size_t>(k);
            CHECK(th::rel(spq.values[i], sp.values[i] * sq.values[i]) <= kTol);
        }
        const RootSet& pr = *p.known_roots();
        Real mean(0L, kBits), inv(0L, kBits);
        for (const auto& l : pr.roots()) {
            mean += l;
            inv += 1L / l;
        }
        CHECK(th::rel(sp.values.front(), static_cast<long>(d) / mean) <= kTol);
        CHECK(th::rel(sp.values.back(), inv / static_cast<long>(d)) <= kTol);
        CHECK(th::rel(sp.values.back(), -cauchy_at(pr, R(0))) <= kTol);
        FiniteTransform sr = finite_s(reverse(p));
        for (int k = 1; k <= d; ++k)
            CHECK(th::rel(sp.values[static_cast<std::size_t>(k - 1)] * sr.values[static_cast<std::size_t>(d - k)], R(1)) <= kTol);
    }
}

TEST_CASE("S is strictly increasing unless p is a Dirac") {
    std::mt19937_64 rng(22);
    Poly p = th::uniform_poly(rng, 15, 0, 3);
    FiniteTransform s = finite_s(p);
    for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i - 1] < s.values[i]);
    // a product with a Dirac stays non-Dirac
    FiniteTransform s2 = finite_s(boxtimes(p, dirac(15, 2)));
    CHECK(s2.values.front() < s2.values.back());
}

TEST_CASE("T multiplicativity with zero roots") {
    std::vector<Real> a{R(3), R(2), R(1), R(0), R(0), R(0)}, b{R(5), R(4), R(0.5), R(0.25), R(0), R(0)};
    Poly p = from_roots(a, kBits), q = from_roots(b, kBits);
    FiniteTransform tp = finite_t(p), tq = finite_t(q), tpq = finite_t(boxtimes(p, q));
    for (double t : {0.05, 0.2, 0.4, 0.55, 0.7, 0.9, 0.99}) {
        Real want = tp.t_at(t) * tq.t_at(t);
        CHECK(abs(tpq.t_at(t) - want).to_double() <= kTol * (1 + abs(want).to_double()));
    }
}

TEST_CASE("derivative and shift lemma") {
    std::mt19937_64 rng(23);
    const int d = 18;
    Poly p = th::uniform_poly(rng, d, 0.2, 4);
    FiniteTransform s = finite_s(p);
    for (int l : {5, 11, 18}) {
        FiniteTransform sl = finite_s(diff_kd(p, l));
        for (int k = 1; k <= l; ++k)
            CHECK(th::rel(sl.values[static_cast<std::size_t>(k - 1)], s.values[static_cast<std::size_t>(k - 1)]) <= kTol);
    }
    const Real a = R(1.5);
    FiniteTransform ssh = finite_s(shift(p, a));
    for (int k = 1; k <= d; ++k) {
        Real g = -cauchy_at(roots_of(diff_kd(p, k)), -a);
        CHECK(th::rel(ssh.values[static_cast<std::size_t>(k - 1)], g) <= 1e-60);
    }
}

TEST_CASE("order inequality and phi order preservation") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> bump(0.0, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        auto pr = th::uniform_roots(rng, 12, 0.1, 3);
        std::vector<Real> qr;
        for (const auto& v : pr) qr.push_back(v + R(bump(rng)));
        Poly p = from_roots(pr, kBits), q = from_roots(qr, kBits);
        REQUIRE(leq_order(p, q));
        FiniteTransform sp = finite_s(p), sq = finite_s(q);
        for (std::size_t i = 0; i < sp.values.size(); ++i) CHECK(sp.values[i] >= sq.values[i]);
        CHECK(leq_order(phi_d(p), phi_d(q)));
    }
}

TEST_CASE("symmetric multiplicativity") {
    std::mt19937_64 rng(25);
    const int d = 8;
    auto half = th::uniform_roots(rng, d, 0.2, 2);
    std::vector<Real> both;
    for (const auto& v : half) {
        both.push_back(v);
        both.push_back(-v);
    }
    SymPoly p(from_roots(both, kBits));
    Poly q = th::uniform_poly(rng, 2 * d, 0.3, 3);
    FiniteTransform sp = finite_s_symmetric(p), sq = finite_s(q);
    FiniteTransform spq = finite_s_symmetric(SymPoly(boxtimes(p.inner(), q)));
    for (int k = 1; k <= d; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        Real want = sp.values[i] * sp.values[i] * sq.values[static_cast<std::size_t>(2 * k - 1)] *
                    sq.values[static_cast<std::size_t>(2 * k - 2)];
        CHECK(th::rel(spq.values[i] * spq.values[i], want) <= kTol);
    }
}

TEST_CASE("transform serialization") {
    FiniteTransform s = finite_s(dirac(3, 2));
    std::string csv = s.to_csv();
    CHECK(csv.rfind("arg,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    std::string json = s.to_json();
    CHECK(json.find("\"kind\"") != std::string::npos);
}
