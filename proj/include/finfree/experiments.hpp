#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "finfree/poly.hpp"
#include "finfree/report.hpp"

namespace finfree {

inline constexpr std::uint64_t kDefaultSeed = 20240501;
// Float slack added to KS bounds that are attained exactly by a staircase.
inline constexpr double kKsSlack = 1e-12;

struct ExperimentOptions {
    std::optional<int> dmax;
    std::vector<int> dgrid;
    std::optional<double> t;
    std::optional<int> precision_bits;
    std::optional<double> override_tol;
    long mc_samples = 200000;
    std::uint64_t seed = kDefaultSeed;
    int workers = 1;
};

struct ExperimentPreset {
    std::string id;
    std::string summary;
    std::function<ExperimentReport(const ExperimentOptions&)> run;
};

const std::vector<ExperimentPreset>& experiment_presets();
const ExperimentPreset* find_preset(const std::string& id);
// Runs a preset, fills metadata, sorts rows and applies --override-tol.
// Unknown ids raise DomainError.
ExperimentReport run_experiment(const std::string& id, const ExperimentOptions& opts);

// Precision for experiments that locate roots of a degree-d polynomial given
// by coefficients: the root condition number of the orthogonal families grows
// like 2^(c d), so the requested precision is raised to 3d + 64 bits.
int root_precision(int d, int requested_bits);

// Uniform random roots in [lo, hi].
std::vector<Real> random_roots(std::mt19937_64& rng, int d, double lo, double hi, int bits);

}  // namespace finfree
