#pragma once

#include <vector>

#include "finfree/poly.hpp"

namespace finfree {

inline constexpr int kMaxCumulantOrder = 12;

// Finite free cumulants kappa_1..kappa_m of a degree-d polynomial; kappa[0] is kappa_1.
struct CumulantVec {
    int d = 0;
    std::vector<Real> kappa;
    int size() const { return static_cast<int>(kappa.size()); }
    const Real& operator()(int n) const { return kappa[static_cast<std::size_t>(n - 1)]; }
};

// One block-size pattern of the set partitions of {1..n}: the sum over all
// partitions with these block sizes of (-1)^(|pi|-1) (|pi|-1)! collapses to
// weight * prod_V e_|V|.
struct PartitionType {
    std::vector<int> block_sizes;  // non-increasing
    long long weight = 0;
};

// Block-size patterns for the partitions of {1..n}, n <= 12, built once from
// restricted growth strings.
const std::vector<PartitionType>& partition_types(int n);

// kappa_n = ((-d)^(n-1)/(n-1)!) sum_pi (-1)^(|pi|-1) (|pi|-1)! prod_V e_|V|.
CumulantVec cumulants(const Poly& p, int m);
// Inverse of cumulants; kv must hold all d cumulants (d <= 12).
Poly from_cumulants(const CumulantVec& kv, int d);

// m_n = (1/d) sum_i lambda_i^n for n = 1..m, from the roots.
std::vector<Real> moments(const Poly& p, int m);
// Same moments through Newton's identities on the coefficients.
std::vector<Real> moments_newton(const Poly& p, int m);

}  // namespace finfree
