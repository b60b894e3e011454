#pragma once

#include <string>

#include <json.hpp>

#include "qrenyi/spectral.hpp"

namespace qrenyi {

// Matrix files: {"n": <int>, "field": "real" | "complex", "data": [...]},
// data row-major, complex entries as [re, im] pairs.

/// Errors: ParseError (shape, types, length), ValidationError (non-finite
/// entry; the message names the first offending index).
CMatrix matrix_from_json(const nlohmann::json& doc);

/// "real" when every imaginary part is zero. Doubles are written in their
/// shortest round-trip form, so reading back is bit-exact.
nlohmann::json matrix_to_json(const CMatrix& m);

/// Errors: ParseError when the file cannot be read or parsed.
CMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const CMatrix& m);

GeneralMatrix load_general(const std::string& path);
/// Errors additionally: ValidationError naming the first entry (row-major
/// index) whose mirror differs beyond the Hermiticity tolerance.
HermitianMatrix load_hermitian(const std::string& path);
/// Errors additionally: ValidationError when not positive definite.
PositiveDefiniteMatrix load_pd(const std::string& path);

}  // namespace qrenyi
