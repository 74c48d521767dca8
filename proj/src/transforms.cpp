#include "finfree/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "finfree/convolutions.hpp"
#include "finfree/errors.hpp"
#include "finfree/families.hpp"

namespace finfree {

namespace {

std::vector<Real> s_grid(int d, int count, int bits) {
    std::vector<Real> g;
    g.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) g.push_back(Real(static_cast<long>(-k), bits) / static_cast<long>(d));
    return g;
}

}  // namespace

const char* to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::S: return "S";
        case TransformKind::T: return "T";
        case TransformKind::SymS: return "SymS";
    }
    return "?";
}

int nonnegative_zero_multiplicity(const Poly& p) {
    const int d = p.degree();
    for (int k = 1; k <= d; ++k)
        if (p.coeff(k) < 0L) throw NegativeRootError("negative root detected: e_" + std::to_string(k) + " < 0");
    const int r = p.trailing_zeros();
    for (int k = 1; k <= d - r; ++k)
        if (p.coeff(k).is_zero())
            throw DomainError("zero coefficient e_" + std::to_string(k) + " before the trailing zeros: not real-rooted");
    return r;
}

const Real& FiniteTransform::t_at(double t) const {
    if (kind != TransformKind::T) throw DomainError("t_at: not a T-transform");
    if (!(t > 0.0 && t < 1.0)) throw DomainError("t_at: argument outside (0,1)");
    // exact breakpoint arithmetic: k-1 = floor(t d)
    long idx = static_cast<long>(std::floor(t * d));
    if (idx >= d) idx = d - 1;
    return values[static_cast<std::size_t>(idx)];
}

std::string FiniteTransform::to_csv() const {
    std::ostringstream os;
    os << "arg,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) os << grid[i].to_string() << "," << values[i].to_string() << "\n";
    return os.str();
}

std::string FiniteTransform::to_json() const {
    nlohmann::json doc;
    doc["kind"] = to_string(kind);
    doc["d"] = d;
    doc["r"] = r;
    auto g = nlohmann::json::array();
    auto v = nlohmann::json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
        g.push_back(grid[i].to_string());
        v.push_back(values[i].to_string());
    }
    doc["grid"] = std::move(g);
    doc["values"] = std::move(v);
    if (kind == TransformKind::SymS) doc["convention"] = "value is i*m; m stored";
    return doc.dump(2) + "\n";
}

FiniteTransform finite_s(const Poly& p) {
    if (p.is_monomial()) throw DomainError("S-transform undefined for x^d");
    const int r = nonnegative_zero_multiplicity(p);
    const int d = p.degree();
    const int bits = p.precision_bits();
    FiniteTransform out;
    out.kind = TransformKind::S;
    out.d = d;
    out.r = r;
    out.grid = s_grid(d, d - r, bits);
    for (int k = 1; k <= d - r; ++k) out.values.push_back(p.coeff(k - 1) / p.coeff(k));
    return out;
}

FiniteTransform finite_t(const Poly& p) {
    const int r = nonnegative_zero_multiplicity(p);
    const int d = p.degree();
    const int bits = p.precision_bits();
    FiniteTransform out;
    out.kind = TransformKind::T;
    out.d = d;
    out.r = r;
    for (int k = 1; k <= d; ++k) {
        out.grid.push_back(Real(static_cast<long>(k - 1), bits) / static_cast<long>(d));
        if (k <= r) out.values.emplace_back(0L, bits);
        else out.values.push_back(p.coeff(d - k + 1) / p.coeff(d - k));
    }
    return out;
}

FiniteTransform finite_s_symmetric(const SymPoly& sp) {
    const Poly& p = sp.inner();
    const int d = sp.half_degree();
    const int bits = p.precision_bits();
    const int r = p.trailing_zeros() / 2;
    if (r == d) throw DomainError("symmetric S-transform undefined for x^(2d)");
    FiniteTransform out;
    out.kind = TransformKind::SymS;
    out.d = d;
    out.r = r;
    out.grid = s_grid(d, d - r, bits);
    for (int k = 1; k <= d - r; ++k) {
        Real ratio = -(p.coeff(2 * k - 2) / p.coeff(2 * k));
        if (!(ratio > 0L))
            throw DomainError("symmetric S-transform: sign pattern of e_" + std::to_string(2 * k) +
                              " is not that of a real-rooted symmetric polynomial");
        out.values.push_back(sqrt(ratio));
    }
    return out;
}

Poly phi_d(const Poly& p) {
    const int r = nonnegative_zero_multiplicity(p);
    const int d = p.degree();
    const int bits = p.precision_bits();
    std::vector<Real> roots;
    roots.reserve(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) {
        if (k <= d - r) roots.push_back(p.coeff(k) / p.coeff(k - 1));
        else roots.emplace_back(0L, bits);
    }
    return from_roots(RootSet(std::move(roots)), bits);
}

Poly theta_d(const Poly& p) { return phi_d(boxtimes(p, f_d(p.degree(), p.precision_bits()))); }

Real coeff_geometric_limit(const Poly& p, int k) {
    if (k < 0 || k > p.degree()) throw DomainError("coeff_geometric_limit: k out of range");
    const Real& e = p.coeff(k);
    if (!(e > 0L)) throw DomainError("coeff_geometric_limit: coefficient must be positive");
    return exp(log(e) / static_cast<long>(p.degree()));
}

}  // namespace finfree
