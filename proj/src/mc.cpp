#include "finfree/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include "finfree/errors.hpp"

namespace finfree {

namespace {

using Cd = std::complex<double>;

// Per-block sums of each statistic and of its square.
struct BlockSums {
    std::vector<Real> sum;
    std::vector<Real> sum_sq;
};

// Runs sample(rng, out) for every sample, block by block, on cfg.workers
// threads; merges block sums in block order.
BlockSums run_blocks(const McConfig& cfg, std::size_t width,
                     const std::function<void(std::mt19937_64&, std::vector<double>&)>& sample) {
    if (cfg.samples < 1) throw DomainError("Monte Carlo needs at least one sample");
    const long nblocks = (cfg.samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<BlockSums> blocks(static_cast<std::size_t>(nblocks));
    std::atomic<long> next{0};
    auto worker = [&]() {
        std::vector<double> x(width);
        for (long b = next++; b < nblocks; b = next++) {
            auto& acc = blocks[static_cast<std::size_t>(b)];
            acc.sum.assign(width, Real(0L, cfg.accum_bits));
            acc.sum_sq.assign(width, Real(0L, cfg.accum_bits));
            auto rng = mc_stream(cfg.seed, static_cast<std::uint64_t>(b));
            const long begin = b * kMcBlockSize;
            const long end = std::min(cfg.samples, begin + kMcBlockSize);
            Real v(0L, cfg.accum_bits);
            for (long s = begin; s < end; ++s) {
                sample(rng, x);
                for (std::size_t k = 0; k < width; ++k) {
                    mpfr_set_d(v.get(), x[k], MPFR_RNDN);
                    acc.sum[k] += v;
                    mpfr_sqr(v.get(), v.get(), MPFR_RNDN);
                    acc.sum_sq[k] += v;
                }
            }
        }
    };
    const int nworkers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(nblocks)));
    std::vector<std::thread> pool;
    for (int w = 1; w < nworkers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    BlockSums total;
    total.sum.assign(width, Real(0L, cfg.accum_bits));
    total.sum_sq.assign(width, Real(0L, cfg.accum_bits));
    for (const auto& b : blocks)
        for (std::size_t k = 0; k < width; ++k) {
            total.sum[k] += b.sum[k];
            total.sum_sq[k] += b.sum_sq[k];
        }
    return total;
}

double standard_error(const Real& sum, const Real& sum_sq, long n) {
    if (n < 2) return 0.0;
    Real mean = sum / n;
    Real var = (sum_sq - mean * sum) / (n - 1);
    double v = var.to_double();
    return v > 0.0 ? std::sqrt(v / static_cast<double>(n)) : 0.0;
}

std::vector<double> root_doubles(const Poly& p, bool nonnegative, const char* op) {
    std::vector<double> r = roots(p).to_doubles();
    if (nonnegative)
        for (double x : r)
            if (x < 0.0) throw NegativeRootError(std::string(op) + ": negative root " + std::to_string(x));
    return r;
}

// Normalized coefficients e_k = (-1)^k c_(d-k) / C(d,k) from det(xI - M).
void normalized_coeffs(const Eigen::MatrixXcd& m, const std::vector<double>& binom, std::vector<double>& out) {
    const auto c = char_poly_leverrier(m);
    const int d = static_cast<int>(m.rows());
    for (int k = 0; k <= d; ++k) {
        double a = c[static_cast<std::size_t>(d - k)].real();
        out[static_cast<std::size_t>(k)] = (k % 2 ? -a : a) / binom[static_cast<std::size_t>(k)];
    }
}

McEstimate run_convolution(const Poly& p, const Poly& q, const McConfig& cfg, bool multiplicative) {
    const char* op = multiplicative ? "mc_boxtimes" : "mc_boxplus";
    if (p.degree() != q.degree()) throw DomainError(std::string(op) + ": degree mismatch");
    const int d = p.degree();
    if (d > kMcMaxDegree)
        throw DomainError(std::string(op) + ": degree " + std::to_string(d) + " exceeds " +
                          std::to_string(kMcMaxDegree));
    const auto a = root_doubles(p, multiplicative, op);
    const auto b = root_doubles(q, multiplicative, op);
    std::vector<double> binom(static_cast<std::size_t>(d) + 1, 1.0);
    for (int k = 1; k <= d; ++k) binom[static_cast<std::size_t>(k)] = binom[static_cast<std::size_t>(k - 1)] * (d - k + 1) / k;

    Eigen::VectorXcd a_half(d), a_diag(d), b_diag(d);
    for (int i = 0; i < d; ++i) {
        a_diag(i) = a[static_cast<std::size_t>(i)];
        a_half(i) = multiplicative ? std::sqrt(a[static_cast<std::size_t>(i)]) : 0.0;
        b_diag(i) = b[static_cast<std::size_t>(i)];
    }

    auto sample = [&](std::mt19937_64& rng, std::vector<double>& out) {
        Eigen::MatrixXcd u = haar_unitary(d, rng);
        Eigen::MatrixXcd ubu = u * b_diag.asDiagonal() * u.adjoint();
        Eigen::MatrixXcd m;
        // A^(1/2) U B U* A^(1/2) is Hermitian with the spectrum of A U B U*
        if (multiplicative) m = a_half.asDiagonal() * ubu * a_half.asDiagonal();
        else m = ubu + Eigen::MatrixXcd(a_diag.asDiagonal());
        normalized_coeffs(m, binom, out);
    };
    BlockSums sums = run_blocks(cfg, static_cast<std::size_t>(d) + 1, sample);

    const int bits = std::max(p.precision_bits(), q.precision_bits());
    std::vector<Real> mean;
    std::vector<double> se;
    mean.emplace_back(1L, bits);
    se.push_back(0.0);
    for (int k = 1; k <= d; ++k) {
        mean.push_back((sums.sum[static_cast<std::size_t>(k)] / cfg.samples).rounded(bits));
        se.push_back(standard_error(sums.sum[static_cast<std::size_t>(k)], sums.sum_sq[static_cast<std::size_t>(k)],
                                    cfg.samples));
    }
    return {Poly(std::move(mean), bits), std::move(se), cfg.samples};
}

}  // namespace

std::mt19937_64 mc_stream(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), 0x5eedu};
    return std::mt19937_64(seq);
}

Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd z(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            double re = normal(rng);
            double im = normal(rng);
            z(i, j) = Cd(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        Cd rjj = r(j, j);
        double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Cd(1.0, 0.0);
    }
    return q;
}

std::vector<Cd> char_poly_leverrier(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<Cd> c(static_cast<std::size_t>(n) + 1, Cd(0.0, 0.0));
    c[static_cast<std::size_t>(n)] = 1.0;
    Eigen::MatrixXcd mk = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
        c[static_cast<std::size_t>(n - k)] = -(m * mk).trace() / static_cast<double>(k);
    }
    return c;
}

McEstimate mc_boxtimes(const Poly& p, const Poly& q, const McConfig& cfg) { return run_convolution(p, q, cfg, true); }

McEstimate mc_boxplus(const Poly& p, const Poly& q, const McConfig& cfg) { return run_convolution(p, q, cfg, false); }

HaarMoments haar_moments(int d, const McConfig& cfg) {
    if (d < 1 || d > kMcMaxDegree) throw DomainError("haar_moments: dimension out of range");
    auto sample = [d](std::mt19937_64& rng, std::vector<double>& out) {
        Eigen::MatrixXcd u = haar_unitary(d, rng);
        out[0] = u(0, 0).real();
        out[1] = u(0, 0).imag();
        out[2] = std::norm(u(0, 0));
    };
    BlockSums s = run_blocks(cfg, 3, sample);
    HaarMoments h;
    h.mean_u11 = Cd((s.sum[0] / cfg.samples).to_double(), (s.sum[1] / cfg.samples).to_double());
    h.stderr_re = standard_error(s.sum[0], s.sum_sq[0], cfg.samples);
    h.stderr_im = standard_error(s.sum[1], s.sum_sq[1], cfg.samples);
    h.mean_abs2 = (s.sum[2] / cfg.samples).to_double();
    h.stderr_abs2 = standard_error(s.sum[2], s.sum_sq[2], cfg.samples);
    return h;
}

}  // namespace finfree
