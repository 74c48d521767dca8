#include "finfree/poly_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "finfree/errors.hpp"

namespace finfree {

using nlohmann::json;

std::string poly_to_json(const Poly& p, PolyRepr repr) {
    json doc;
    doc["degree"] = p.degree();
    doc["precision_bits"] = p.precision_bits();
    json values = json::array();
    if (repr == PolyRepr::Coeffs) {
        doc["repr"] = "coeffs";
        for (const auto& c : p.coeffs()) values.push_back(c.to_string());
    } else {
        doc["repr"] = "roots";
        const RootSet rs = roots(p);
        for (const auto& r : rs.roots()) values.push_back(r.to_string());
    }
    doc["values"] = std::move(values);
    return doc.dump(2) + "\n";
}

Poly poly_from_json(const std::string& text, int precision_override) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("polynomial file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("polynomial file must hold a JSON object");
    for (const char* key : {"degree", "repr", "values"})
        if (!doc.contains(key)) throw DomainError(std::string("polynomial file lacks \"") + key + "\"");
    if (!doc["degree"].is_number_integer()) throw DomainError("\"degree\" must be an integer");
    const int d = doc["degree"].get<int>();
    int bits = default_precision_bits();
    if (doc.contains("precision_bits")) {
        if (!doc["precision_bits"].is_number_integer()) throw DomainError("\"precision_bits\" must be an integer");
        bits = doc["precision_bits"].get<int>();
    }
    if (precision_override > 0) bits = precision_override;
    if (bits < 53) throw DomainError("precision_bits must be at least 53");
    const auto& vals = doc["values"];
    if (!vals.is_array()) throw DomainError("\"values\" must be an array");
    std::vector<Real> parsed;
    for (const auto& v : vals) {
        if (v.is_string()) {
            parsed.push_back(Real::from_string(v.get<std::string>(), bits));
        } else if (v.is_number()) {
            // plain JSON numbers accepted for hand-written files
            parsed.push_back(Real::from_string(v.dump(), bits));
        } else {
            throw DomainError("\"values\" entries must be decimal strings");
        }
    }
    const std::string repr = doc["repr"].is_string() ? doc["repr"].get<std::string>() : "";
    if (repr == "coeffs") {
        if (static_cast<int>(parsed.size()) != d + 1)
            throw DomainError("coeffs representation needs degree+1 values");
        return Poly(std::move(parsed), bits);
    }
    if (repr == "roots") {
        if (static_cast<int>(parsed.size()) != d) throw DomainError("roots representation needs degree values");
        return from_roots(RootSet(std::move(parsed)), bits);
    }
    throw DomainError("\"repr\" must be \"coeffs\" or \"roots\"");
}

Poly read_poly_file(const std::string& path, int precision_override) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return poly_from_json(ss.str(), precision_override);
}

void write_poly_file(const std::string& path, const Poly& p, PolyRepr repr) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << poly_to_json(p, repr);
}

}  // namespace finfree
