#include "finfree/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace finfree {

namespace {

constexpr int kValueDigits = 25;

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

const char* to_string(Metric m) {
    switch (m) {
        case Metric::Abs: return "abs";
        case Metric::Rel: return "rel";
        case Metric::Ks: return "ks";
        case Metric::Info: return "info";
    }
    return "?";
}

double ReportRow::measured() const {
    switch (metric) {
        case Metric::Abs: return abs_error.to_double();
        case Metric::Rel: return rel_error.to_double();
        case Metric::Ks: return ks.value_or(0.0);
        case Metric::Info: return 0.0;
    }
    return 0.0;
}

void ReportRow::evaluate() {
    if (metric == Metric::Info) {
        pass = true;
        return;
    }
    const double m = measured();
    pass = std::isfinite(m) && m <= tolerance;
}

ReportRow make_row(std::string label, int d, double k_or_t, const Real& finite, const Real& analytic, Metric metric,
                   double tolerance) {
    ReportRow r;
    r.label = std::move(label);
    r.d = d;
    r.k_or_t = k_or_t;
    r.finite_value = finite;
    r.analytic_value = analytic;
    r.abs_error = abs(finite - analytic);
    r.rel_error = relative_difference(finite, analytic);
    r.metric = metric;
    r.tolerance = tolerance;
    r.evaluate();
    return r;
}

ReportRow make_ks_row(std::string label, int d, double k_or_t, double ks, double tolerance) {
    ReportRow r;
    r.label = std::move(label);
    r.d = d;
    r.k_or_t = k_or_t;
    r.finite_value = Real(ks, 53);
    r.analytic_value = Real(0L, 53);
    r.abs_error = Real(ks, 53);
    r.rel_error = Real(0L, 53);
    r.ks = ks;
    r.metric = Metric::Ks;
    r.tolerance = tolerance;
    r.evaluate();
    return r;
}

bool ExperimentReport::passed() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::vector<const ReportRow*> ExperimentReport::failing_rows() const {
    std::vector<const ReportRow*> out;
    for (const auto& r : rows)
        if (!r.pass) out.push_back(&r);
    return out;
}

void ExperimentReport::sort_rows() {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.d != b.d) return a.d < b.d;
        return a.k_or_t < b.k_or_t;
    });
}

void ExperimentReport::override_tolerance(double tol) {
    nonstandard = true;
    for (auto& r : rows) {
        if (r.metric == Metric::Info) continue;
        r.tolerance = tol;
        r.evaluate();
    }
    notes.push_back("tolerances overridden to " + num(tol));
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os << "label,d,k_or_t,finite_value,analytic_value,abs_error,rel_error,ks,metric,tolerance,pass\n";
    for (const auto& r : rows) {
        os << csv_field(r.label) << "," << r.d << "," << num(r.k_or_t) << "," << r.finite_value.to_string(kValueDigits)
           << "," << r.analytic_value.to_string(kValueDigits) << "," << r.abs_error.to_string(6) << ","
           << r.rel_error.to_string(6) << "," << (r.ks ? num(*r.ks) : "") << "," << to_string(r.metric) << ","
           << (r.metric == Metric::Info ? "" : num(r.tolerance)) << "," << (r.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string ExperimentReport::to_json() const {
    nlohmann::json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["experiment_id"] = experiment_id;
    doc["passed"] = passed();
    doc["nonstandard"] = nonstandard;
    doc["metadata"] = {{"precision_bits", metadata.precision_bits},
                       {"seed", metadata.seed},
                       {"wall_time_ms", metadata.wall_time_ms},
                       {"tool_version", metadata.tool_version}};
    auto rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j = {{"label", r.label},
                            {"d", r.d},
                            {"k_or_t", r.k_or_t},
                            {"finite_value", r.finite_value.to_string(kValueDigits)},
                            {"analytic_value", r.analytic_value.to_string(kValueDigits)},
                            {"abs_error", r.abs_error.to_string(6)},
                            {"rel_error", r.rel_error.to_string(6)},
                            {"metric", to_string(r.metric)},
                            {"pass", r.pass}};
        if (r.ks) j["ks"] = *r.ks;
        if (r.metric != Metric::Info) j["tolerance"] = r.tolerance;
        rows_json.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows_json);
    auto checks_json = nlohmann::json::array();
    for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    doc["checks"] = std::move(checks_json);
    doc["notes"] = notes;
    return doc.dump(2) + "\n";
}

}  // namespace finfree
