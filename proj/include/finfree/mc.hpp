#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "finfree/poly.hpp"

namespace finfree {

inline constexpr int kMcMaxDegree = 16;
// Samples per RNG stream. Stream i is seeded from (seed, i), so the estimate does
// not depend on how blocks are spread over workers.
inline constexpr long kMcBlockSize = 1024;

struct McConfig {
    long samples = 200000;
    std::uint64_t seed = 20240501;
    int workers = 1;
    // Precision of the running sums.
    int accum_bits = 128;
};

struct McEstimate {
    Poly mean;                   // normalized coefficients of the sample mean
    std::vector<double> stderrs;  // standard error of each e_k, k = 0..d
    long samples = 0;
};

// Random stream for one block of samples.
std::mt19937_64 mc_stream(std::uint64_t seed, std::uint64_t block);

// Haar unitary from a complex Ginibre matrix: Q of its QR factorisation with
// the phases of diag(R) moved into Q.
Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& rng);

// det(xI - M) = sum_k c_k x^k by the Leverrier-Faddeev recursion; returns c_0..c_d.
std::vector<std::complex<double>> char_poly_leverrier(const Eigen::MatrixXcd& m);

// Expected characteristic polynomial of A U B U* with A, B diagonal holding
// the (nonnegative) roots of p and q.
McEstimate mc_boxtimes(const Poly& p, const Poly& q, const McConfig& cfg);
// Same for A + U B U*.
McEstimate mc_boxplus(const Poly& p, const Poly& q, const McConfig& cfg);

struct HaarMoments {
    std::complex<double> mean_u11;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    double mean_abs2 = 0.0;
    double stderr_abs2 = 0.0;
};
// Sample moments of the (1,1) entry of Haar unitaries: E U11 = 0, E|U11|^2 = 1/d.
HaarMoments haar_moments(int d, const McConfig& cfg);

}  // namespace finfree
