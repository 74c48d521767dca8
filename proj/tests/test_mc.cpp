#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "finfree/convolutions.hpp"
#include "finfree/errors.hpp"
#include "finfree/mc.hpp"
#include "helpers.hpp"

using namespace finfree;
using th::kBits;
using th::R;

namespace {

Poly with_roots(std::vector<double> r) {
    std::vector<Real> v;
    for (double x : r) v.emplace_back(x, kBits);
    return from_roots(v, kBits);
}

McConfig config(long samples, std::uint64_t seed = 7, int workers = 1) {
    McConfig c;
    c.samples = samples;
    c.seed = seed;
    c.workers = workers;
    return c;
}

// |estimate - exact| <= n sigma, with a floor for coefficients the sampler
// reproduces up to rounding.
void check_within(const McEstimate& est, const Poly& exact, double n_sigma) {
    for (int k = 1; k <= exact.degree(); ++k) {
        INFO("k = " << k);
        double err = std::abs((est.mean.coeff(k) - exact.coeff(k)).to_double());
        CHECK(err <= n_sigma * est.stderrs[static_cast<std::size_t>(k)] + 1e-12);
    }
}

}  // namespace

TEST_CASE("Haar unitaries are unitary") {
    std::mt19937_64 rng(1);
    for (int d : {1, 2, 5, 16}) {
        Eigen::MatrixXcd u = haar_unitary(d, rng);
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).norm() <= 1e-12);
    }
}

TEST_CASE("Leverrier characteristic polynomial") {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
    diag(0, 0) = 1.0;
    diag(1, 1) = 2.0;
    diag(2, 2) = 4.0;
    auto c = char_poly_leverrier(diag);
    // (x-1)(x-2)(x-4) = x^3 - 7x^2 + 14x - 8
    const double want[] = {-8, 14, -7, 1};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(c[static_cast<std::size_t>(i)] - want[i]) <= 1e-13);

    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) a(i, j) = {g(rng), g(rng)};
    Eigen::MatrixXcd h = a + a.adjoint();
    Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
    auto ch = char_poly_leverrier(h);
    for (int i = 0; i < 6; ++i) {
        std::complex<double> acc = 0.0;
        for (int k = 6; k >= 0; --k) acc = acc * ev(i) + ch[static_cast<std::size_t>(k)];
        CHECK(std::abs(acc) <= 1e-8);
    }
}

TEST_CASE("boxtimes with (x-1)^d reproduces p") {
    const int d = 5;
    Poly p = with_roots({0.5, 1, 2, 3, 4});
    McEstimate est = mc_boxtimes(p, with_roots(std::vector<double>(d, 1.0)), config(500));
    for (int k = 0; k <= d; ++k) CHECK(std::abs((est.mean.coeff(k) - p.coeff(k)).to_double()) <= 1e-12);
}

TEST_CASE("boxtimes of x(x-1) with itself") {
    Poly p = with_roots({0, 1});
    McEstimate est = mc_boxtimes(p, p, config(200000));
    CHECK(est.samples == 200000);
    const double e1 = est.mean.coeff(1).to_double();
    CHECK(std::abs(e1 - 0.25) <= 3 * est.stderrs[1]);
    CHECK(est.stderrs[1] > 0.0);
    CHECK(std::abs(est.mean.coeff(2).to_double()) <= 1e-12);
}

TEST_CASE("boxplus at d = 3 and boxtimes at d = 4 within four standard errors") {
    Poly p = with_roots({-1, 0.5, 2}), q = with_roots({0, 1, 3});
    check_within(mc_boxplus(p, q, config(40000, 11)), boxplus(p, q), 4.0);
    Poly a = with_roots({0.2, 1, 1.5, 3}), b = with_roots({0.5, 0.7, 2, 2.5});
    check_within(mc_boxtimes(a, b, config(40000, 12)), boxtimes(a, b), 4.0);
}

TEST_CASE("estimates are reproducible and independent of the worker count") {
    Poly p = with_roots({0.5, 1, 2}), q = with_roots({1, 2, 4});
    McEstimate one = mc_boxtimes(p, q, config(5000, 99, 1));
    McEstimate again = mc_boxtimes(p, q, config(5000, 99, 1));
    McEstimate four = mc_boxtimes(p, q, config(5000, 99, 4));
    McEstimate other = mc_boxtimes(p, q, config(5000, 100, 1));
    CHECK(one.mean.coeffs() == again.mean.coeffs());
    CHECK(one.mean.coeffs() == four.mean.coeffs());
    CHECK(one.stderrs == four.stderrs);
    CHECK(one.mean.coeffs() != other.mean.coeffs());
}

TEST_CASE("Haar moments of the (1,1) entry") {
    for (int d : {2, 5}) {
        HaarMoments h = haar_moments(d, config(50000, 3));
        CHECK(std::abs(h.mean_u11.real()) <= 4 * h.stderr_re);
        CHECK(std::abs(h.mean_u11.imag()) <= 4 * h.stderr_im);
        CHECK(std::abs(h.mean_abs2 - 1.0 / d) <= 4 * h.stderr_abs2);
    }
    CHECK_THROWS_AS(haar_moments(0, config(10)), DomainError);
}

TEST_CASE("input validation") {
    Poly neg = with_roots({-1, 2});
    Poly pos = with_roots({1, 2});
    CHECK_THROWS_AS(mc_boxtimes(neg, pos, config(10)), NegativeRootError);
    CHECK_NOTHROW(mc_boxplus(neg, pos, config(10)));
    std::vector<double> r17(17, 1.0);
    CHECK_THROWS_AS(mc_boxplus(with_roots(r17), with_roots(r17), config(10)), DomainError);
    CHECK_THROWS_AS(mc_boxplus(pos, with_roots({1, 2, 3}), config(10)), DomainError);
    CHECK_THROWS_AS(mc_boxplus(pos, pos, config(0)), DomainError);
}
