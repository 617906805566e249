#pragma once

#include <string>

#include "json.hpp"

#include "blochcert/holomap.hpp"

namespace blochcert {

/// [[re, im], ...]
nlohmann::json to_json(const ComplexVector& v);
ComplexVector complex_vector_from_json(const nlohmann::json& j, int expected_len = -1);

/// {"n": int, "terms": [{"exponents": [...], "coeff": [[re, im], ...]}, ...]}
nlohmann::json to_json(const PolyMap& f);
/// Throws InputError on any schema violation, including duplicate exponent lists.
PolyMap polymap_from_json(const nlohmann::json& j);

PolyMap load_polymap(const std::string& path);

}  // namespace blochcert
