// finfree_cli: polynomial algebra, transform dumps and experiment presets.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "finfree/convolutions.hpp"
#include "finfree/errors.hpp"
#include "finfree/experiments.hpp"
#include "finfree/families.hpp"
#include "finfree/mc.hpp"
#include "finfree/poly_io.hpp"
#include "finfree/transforms.hpp"

using namespace finfree;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
}

std::string poly_text(const Poly& p, const std::string& format) {
    if (format == "csv") {
        std::ostringstream os;
        os << "k,e_k\n";
        for (int k = 0; k <= p.degree(); ++k) os << k << "," << p.coeff(k).to_string() << "\n";
        return os.str();
    }
    return poly_to_json(p);
}

std::string mc_text(const McEstimate& est, const Poly& exact, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        os << "k,estimate,stderr,exact\n";
        for (int k = 0; k <= exact.degree(); ++k)
            os << k << "," << est.mean.coeff(k).to_string(17) << "," << est.stderrs[static_cast<std::size_t>(k)] << ","
               << exact.coeff(k).to_string(17) << "\n";
        return os.str();
    }
    os << "{\n  \"samples\": " << est.samples << ",\n  \"rows\": [\n";
    for (int k = 0; k <= exact.degree(); ++k) {
        os << "    {\"k\": " << k << ", \"estimate\": \"" << est.mean.coeff(k).to_string(17) << "\", \"stderr\": "
           << est.stderrs[static_cast<std::size_t>(k)] << ", \"exact\": \"" << exact.coeff(k).to_string(17) << "\"}"
           << (k < exact.degree() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

std::vector<int> parse_grid(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            int v = std::stoi(item, &pos);
            if (pos != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--dgrid: bad entry '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite free probability toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", FINFREE_VERSION);

    int precision = 0;
    std::string out, format = "json";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--precision-bits", precision, "mantissa bits (default: FINFREE_PRECISION_BITS or 256)")
            ->check(CLI::Range(53, 1 << 20));
        sub->add_option("--out", out, "output file (stdout when omitted)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    // conv
    std::string op, in1, in2;
    auto* conv = app.add_subcommand("conv", "finite free convolution of two polynomial files");
    conv->add_option("op", op, "boxplus or boxtimes")->required()->check(CLI::IsMember({"boxplus", "boxtimes"}));
    conv->add_option("in1", in1, "first polynomial (JSON)")->required();
    conv->add_option("in2", in2, "second polynomial (JSON)")->required();
    add_common(conv);

    // transform
    std::string kind, in;
    auto* transform = app.add_subcommand("transform", "finite S/T/symmetric-S transform, Phi_d or Theta_d");
    transform->add_option("kind", kind, "s, t, syms, phi or theta")
        ->required()
        ->check(CLI::IsMember({"s", "t", "syms", "phi", "theta"}));
    transform->add_option("in", in, "polynomial (JSON)")->required();
    add_common(transform);

    // family
    std::string family;
    int d = 0, l = 0;
    std::string a_text = "0", b_text = "1", beta_text = "2", scale_text = "1";
    auto* fam = app.add_subcommand("family", "generate a named polynomial family");
    fam->add_option("name", family, "laguerre, bessel, jacobi, bernoulli, f_d, hermite, chebyshev_t, chebyshev_u, poisson")
        ->required()
        ->check(CLI::IsMember({"laguerre", "bessel", "jacobi", "bernoulli", "f_d", "hermite", "chebyshev_t",
                               "chebyshev_u", "poisson"}));
    fam->add_option("--d", d, "degree (total degree for hermite/chebyshev)")->required()->check(CLI::PositiveNumber);
    fam->add_option("--a", a_text, "lower parameter a");
    fam->add_option("--b", b_text, "upper parameter b");
    fam->add_option("--l", l, "number of unit roots (bernoulli)");
    fam->add_option("--scale", scale_text, "bernoulli nonzero root");
    fam->add_option("--beta", beta_text, "poisson parameter");
    add_common(fam);

    // experiment
    std::string id, dgrid;
    int dmax = 0, workers = 1;
    double t = 0.0, override_tol = 0.0;
    long mc_samples = 200000;
    std::uint64_t seed = kDefaultSeed;
    bool list = false;
    auto* exp = app.add_subcommand("experiment", "run a named experiment preset");
    exp->add_option("id", id, "experiment id (see --list)");
    exp->add_flag("--list", list, "list experiment ids");
    auto* o_dmax = exp->add_option("--dmax", dmax, "degree (single-degree presets) or grid cap")->check(CLI::PositiveNumber);
    exp->add_option("--dgrid", dgrid, "comma separated degree sweep");
    auto* o_t = exp->add_option("--t", t, "ratio parameter");
    auto* o_tol = exp->add_option("--override-tol", override_tol, "replace preset tolerances (report marked nonstandard)");
    exp->add_option("--mc-samples", mc_samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
    exp->add_option("--seed", seed, "random seed");
    exp->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    add_common(exp);

    // mc
    std::string mc_op;
    auto* mc = app.add_subcommand("mc", "Monte-Carlo expected characteristic polynomial");
    mc->add_option("op", mc_op, "boxplus or boxtimes")->required()->check(CLI::IsMember({"boxplus", "boxtimes"}));
    mc->add_option("in1", in1, "first polynomial (JSON)")->required();
    mc->add_option("in2", in2, "second polynomial (JSON)")->required();
    mc->add_option("--mc-samples", mc_samples, "samples")->check(CLI::PositiveNumber);
    mc->add_option("--seed", seed, "random seed");
    mc->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    add_common(mc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    const int bits = precision > 0 ? precision : default_precision_bits();
    try {
        if (conv->parsed()) {
            Poly p = read_poly_file(in1, precision), q = read_poly_file(in2, precision);
            emit(out, poly_text(op == "boxplus" ? boxplus(p, q) : boxtimes(p, q), format));
            return kExitPass;
        }
        if (transform->parsed()) {
            Poly p = read_poly_file(in, precision);
            if ((kind == "s" || kind == "syms") && p.is_monomial()) {
                std::cerr << "error: S-transform undefined for x^d\n";
                return kExitFail;
            }
            if (kind == "s") emit(out, format == "csv" ? finite_s(p).to_csv() : finite_s(p).to_json());
            else if (kind == "t") emit(out, format == "csv" ? finite_t(p).to_csv() : finite_t(p).to_json());
            else if (kind == "syms") {
                FiniteTransform s = finite_s_symmetric(SymPoly(p));
                emit(out, format == "csv" ? s.to_csv() : s.to_json());
            } else if (kind == "phi") emit(out, poly_text(phi_d(p), format));
            else emit(out, poly_text(theta_d(p), format));
            return kExitPass;
        }
        if (fam->parsed()) {
            auto real = [&](const std::string& s) { return Real::from_string(s, bits + 32); };
            Poly p = [&]() -> Poly {
                if (family == "laguerre") {
                    if (!laguerre_in_region(d, real(b_text)))
                        std::cerr << "warning: b outside the positive-root region b > 1 - 1/d\n";
                    return laguerre(d, real(b_text), bits);
                }
                if (family == "bessel") {
                    if (!bessel_in_region(real(a_text))) std::cerr << "warning: a outside the region a < 0\n";
                    return bessel(d, real(a_text), bits);
                }
                if (family == "jacobi") {
                    if (jacobi_region(real(b_text), real(a_text)) == JacobiRegion::Outside)
                        std::cerr << "warning: (b, a) outside the three positive-root regions\n";
                    return jacobi(d, real(b_text), real(a_text), bits);
                }
                if (family == "bernoulli") return bernoulli_poly(d, l, real(scale_text), bits);
                if (family == "f_d") return f_d(d, bits);
                if (family == "hermite") return hermite(d, bits).inner();
                if (family == "chebyshev_t") return chebyshev_t(d, bits).inner();
                if (family == "chebyshev_u") return chebyshev_u(d, bits).inner();
                return poisson_base(d, real(beta_text), bits);
            }();
            emit(out, poly_text(p, format));
            return kExitPass;
        }
        if (mc->parsed()) {
            Poly p = read_poly_file(in1, precision), q = read_poly_file(in2, precision);
            McConfig cfg;
            cfg.samples = mc_samples;
            cfg.seed = seed;
            cfg.workers = workers;
            bool times = mc_op == "boxtimes";
            McEstimate est = times ? mc_boxtimes(p, q, cfg) : mc_boxplus(p, q, cfg);
            emit(out, mc_text(est, times ? boxtimes(p, q) : boxplus(p, q), format));
            return kExitPass;
        }
        // experiment
        if (list) {
            for (const auto& pr : experiment_presets()) std::cout << pr.id << "\t" << pr.summary << "\n";
            return kExitPass;
        }
        if (id.empty()) throw UsageError("experiment id required (see --list)");
        if (!find_preset(id)) throw UsageError("unknown experiment id '" + id + "'");
        ExperimentOptions opts;
        if (*o_dmax) opts.dmax = dmax;
        opts.dgrid = parse_grid(dgrid);
        if (*o_t) opts.t = t;
        if (precision > 0) opts.precision_bits = precision;
        if (*o_tol) opts.override_tol = override_tol;
        opts.mc_samples = mc_samples;
        opts.seed = seed;
        opts.workers = workers;
        ExperimentReport rep = run_experiment(id, opts);
        emit(out, format == "csv" ? rep.to_csv() : rep.to_json());
        if (!rep.passed()) {
            std::cerr << "experiment " << id << ": tolerance failure\n";
            for (const ReportRow* r : rep.failing_rows())
                std::cerr << "  " << r->label << " d=" << r->d << " k_or_t=" << r->k_or_t << " "
                          << to_string(r->metric) << "=" << r->measured() << " > " << r->tolerance << "\n";
            for (const auto& c : rep.checks)
                if (!c.pass) std::cerr << "  check failed: " << c.name << " (" << c.detail << ")\n";
            return kExitFail;
        }
        return kExitPass;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
