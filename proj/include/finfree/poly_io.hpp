#pragma once

#include <string>

#include "finfree/poly.hpp"

namespace finfree {

enum class PolyRepr { Coeffs, Roots };

// {"degree": d, "repr": "coeffs"|"roots", "values": [decimal strings], "precision_bits": n}
// Decimal strings are the shortest ones that read back bit-identically.
std::string poly_to_json(const Poly& p, PolyRepr repr = PolyRepr::Coeffs);
// precision_override > 0 replaces the precision stored in the document.
Poly poly_from_json(const std::string& text, int precision_override = 0);

Poly read_poly_file(const std::string& path, int precision_override = 0);
void write_poly_file(const std::string& path, const Poly& p, PolyRepr repr = PolyRepr::Coeffs);

}  // namespace finfree
