#include "finfree/cumulants.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>

#include "finfree/errors.hpp"

namespace finfree {

namespace {

constexpr int kGuardBits = 64;

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<PartitionType> build_types(int n) {
    // walk restricted growth strings a_1 = 0, a_i <= 1 + max(a_1..a_{i-1})
    std::map<std::vector<int>, long long> counts;
    std::vector<int> a(static_cast<std::size_t>(n), 0), mx(static_cast<std::size_t>(n), 0);
    std::vector<int> sizes;
    for (;;) {
        int blocks = mx[static_cast<std::size_t>(n - 1)] + 1;
        sizes.assign(static_cast<std::size_t>(blocks), 0);
        for (int v : a) ++sizes[static_cast<std::size_t>(v)];
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        ++counts[sizes];
        int i = n - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] == mx[static_cast<std::size_t>(i - 1)] + 1) --i;
        if (i == 0) break;
        ++a[static_cast<std::size_t>(i)];
        mx[static_cast<std::size_t>(i)] = std::max(mx[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            a[static_cast<std::size_t>(j)] = 0;
            mx[static_cast<std::size_t>(j)] = mx[static_cast<std::size_t>(i)];
        }
    }
    std::vector<PartitionType> out;
    for (const auto& [bs, c] : counts) {
        int b = static_cast<int>(bs.size());
        long long sign = (b % 2 == 1) ? 1 : -1;
        out.push_back({bs, sign * factorial(b - 1) * c});
    }
    return out;
}

const std::array<std::vector<PartitionType>, kMaxCumulantOrder + 1>& all_types() {
    static const auto tables = [] {
        std::array<std::vector<PartitionType>, kMaxCumulantOrder + 1> t;
        for (int n = 1; n <= kMaxCumulantOrder; ++n) t[static_cast<std::size_t>(n)] = build_types(n);
        return t;
    }();
    return tables;
}

Real type_product(const PartitionType& t, const std::vector<Real>& e, int bits) {
    Real prod(static_cast<long>(t.weight), bits);
    for (int s : t.block_sizes) prod *= e[static_cast<std::size_t>(s)];
    return prod;
}

// (-d)^(n-1) / (n-1)!
Real cumulant_prefactor(int d, int n, int bits) {
    Real f = pow(Real(static_cast<long>(-d), bits), static_cast<long>(n - 1));
    return f / Real(static_cast<long>(factorial(n - 1)), bits);
}

}  // namespace

const std::vector<PartitionType>& partition_types(int n) {
    if (n < 1 || n > kMaxCumulantOrder)
        throw DomainError("partition tables cover 1 <= n <= " + std::to_string(kMaxCumulantOrder));
    return all_types()[static_cast<std::size_t>(n)];
}

CumulantVec cumulants(const Poly& p, int m) {
    const int d = p.degree();
    if (m < 1) throw DomainError("cumulants: m must be positive");
    if (m > kMaxCumulantOrder)
        throw DomainError("cumulants: order " + std::to_string(m) + " exceeds the cap of 12 (Bell number growth)");
    if (m > d) throw DomainError("cumulants: order exceeds degree");
    const int bits = p.precision_bits();
    const int work = bits + kGuardBits;
    std::vector<Real> e;
    for (int k = 0; k <= m; ++k) e.push_back(p.coeff(k).rounded(work));
    CumulantVec out;
    out.d = d;
    for (int n = 1; n <= m; ++n) {
        Real sum(0L, work);
        for (const auto& t : partition_types(n)) sum += type_product(t, e, work);
        // (-d)^(n-1) times the sum is exact for moderate inputs; the single
        // division by (n-1)! is then the only rounding before the final one
        Real scaled = sum * pow(Real(static_cast<long>(-d), work), static_cast<long>(n - 1));
        out.kappa.push_back((scaled / Real(static_cast<long>(factorial(n - 1)), work)).rounded(bits));
    }
    return out;
}

Poly from_cumulants(const CumulantVec& kv, int d) {
    if (kv.size() != d) throw DomainError("from_cumulants: need exactly d cumulants");
    if (d < 1 || d > kMaxCumulantOrder)
        throw DomainError("from_cumulants: degree must lie in [1, 12]");
    const int bits = kv.kappa.front().precision();
    const int work = bits + kGuardBits;
    std::vector<Real> e(static_cast<std::size_t>(d) + 1, Real(0L, work));
    e[0] = Real(1L, work);
    for (int n = 1; n <= d; ++n) {
        // the single-block partition contributes e_n with weight 1
        Real rest(0L, work);
        for (const auto& t : partition_types(n)) {
            if (t.block_sizes.size() == 1) continue;
            rest += type_product(t, e, work);
        }
        e[static_cast<std::size_t>(n)] = kv(n).rounded(work) / cumulant_prefactor(d, n, work) - rest;
    }
    std::vector<Real> out;
    for (const auto& v : e) out.push_back(v.rounded(bits));
    return Poly(std::move(out), bits);
}

std::vector<Real> moments(const Poly& p, int m) {
    if (m < 1) throw DomainError("moments: m must be positive");
    RootSet r = roots(p);
    const int bits = p.precision_bits();
    std::vector<Real> out(static_cast<std::size_t>(m), Real(0L, bits));
    for (const auto& lam : r.roots()) {
        Real pw(1L, bits);
        for (int n = 0; n < m; ++n) {
            pw *= lam;
            out[static_cast<std::size_t>(n)] += pw;
        }
    }
    for (auto& v : out) v /= static_cast<long>(p.degree());
    return out;
}

std::vector<Real> moments_newton(const Poly& p, int m) {
    if (m < 1) throw DomainError("moments: m must be positive");
    const int d = p.degree();
    const int bits = p.precision_bits();
    const int work = bits + kGuardBits;
    std::vector<Real> e(static_cast<std::size_t>(d) + 1, Real(0L, work));
    for (int k = 0; k <= d; ++k) e[static_cast<std::size_t>(k)] = binomial(d, k, work) * p.coeff(k);
    // P_n = sum_{i=1}^{n-1} (-1)^(i-1) e_i P_(n-i) + (-1)^(n-1) n e_n
    std::vector<Real> ps(static_cast<std::size_t>(m) + 1, Real(0L, work));
    for (int n = 1; n <= m; ++n) {
        Real acc(0L, work);
        for (int i = 1; i <= std::min(n - 1, d); ++i) {
            Real t = e[static_cast<std::size_t>(i)] * ps[static_cast<std::size_t>(n - i)];
            if (i % 2 == 0) acc -= t;
            else acc += t;
        }
        if (n <= d) {
            Real t = e[static_cast<std::size_t>(n)] * static_cast<long>(n);
            if (n % 2 == 0) acc -= t;
            else acc += t;
        }
        ps[static_cast<std::size_t>(n)] = acc;
    }
    std::vector<Real> out;
    for (int n = 1; n <= m; ++n) out.push_back((ps[static_cast<std::size_t>(n)] / static_cast<long>(d)).rounded(bits));
    return out;
}

}  // namespace finfree
