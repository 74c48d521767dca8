#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finfree/real.hpp"

namespace finfree {

inline constexpr int kReportFormatVersion = 1;

// What a row's tolerance is compared against.
enum class Metric { Abs, Rel, Ks, Info };
const char* to_string(Metric m);

struct ReportRow {
    std::string label;
    int d = 0;
    double k_or_t = 0.0;
    Real finite_value;
    Real analytic_value;
    Real abs_error;
    Real rel_error;
    std::optional<double> ks;
    Metric metric = Metric::Info;
    double tolerance = 0.0;
    bool pass = true;

    double measured() const;
    void evaluate();
};

ReportRow make_row(std::string label, int d, double k_or_t, const Real& finite, const Real& analytic, Metric metric,
                   double tolerance);
ReportRow make_ks_row(std::string label, int d, double k_or_t, double ks, double tolerance);

// Whole-report assertion that is not a per-row comparison (monotone approach, bit-exactness).
struct ReportCheck {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct ReportMetadata {
    int precision_bits = 0;
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;
    std::string tool_version = FINFREE_VERSION;
};

struct ExperimentReport {
    std::string experiment_id;
    std::vector<ReportRow> rows;
    std::vector<ReportCheck> checks;
    std::vector<std::string> notes;
    ReportMetadata metadata;
    bool nonstandard = false;

    bool passed() const;
    std::vector<const ReportRow*> failing_rows() const;
    // Stable sort by (d, k_or_t).
    void sort_rows();
    // Replaces every non-informational tolerance and marks the report nonstandard.
    void override_tolerance(double tol);

    // Columns: label,d,k_or_t,finite_value,analytic_value,abs_error,rel_error,ks,metric,tolerance,pass
    std::string to_csv() const;
    std::string to_json() const;
};

}  // namespace finfree
