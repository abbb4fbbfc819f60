#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "obsorder/hermitian.hpp"

namespace obsorder {

using Json = nlohmann::ordered_json;

// Matrix JSON: {"dim": d, "entries": [[[re, im], ...d], ...d rows]}.
// Entries may also be bare numbers (imaginary part zero).

Json matrix_to_json(const ComplexMatrix& m);
Json matrix_to_json(const HermitianMatrix& m);

/// Square, finite complex matrix; no symmetry requirement.
ComplexMatrix complex_matrix_from_json(const Json& j);
HermitianMatrix hermitian_from_json(const Json& j);

/// Vector JSON: [[re, im], ...] or [x, ...].
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

/// Compact serialisation with every floating-point number printed at 17
/// significant digits, so output is an exact and reproducible image of the
/// stored doubles.
std::string dump_json(const Json& j);

/// Reads and parses a JSON document; "-" means standard input.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

void write_json_file(const std::string& path, const Json& j);

}  // namespace obsorder
