#include "blochcert/polymap_json.hpp"

#include <fstream>
#include <set>

#include "blochcert/errors.hpp"

namespace blochcert {

using nlohmann::json;

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

ComplexVector complex_vector_from_json(const json& j, int expected_len) {
  if (!j.is_array()) throw InputError("expected an array of [re, im] pairs");
  if (expected_len >= 0 && static_cast<int>(j.size()) != expected_len) {
    throw InputError("expected " + std::to_string(expected_len) + " [re, im] pairs, got " +
                     std::to_string(j.size()));
  }
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw InputError("complex entries must be [re, im] number pairs");
    }
    v[static_cast<Eigen::Index>(i)] = Complex(p[0].get<double>(), p[1].get<double>());
  }
  return v;
}

json to_json(const PolyMap& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exponents", e}, {"coeff", to_json(c)}});
  return {{"n", f.dim()}, {"terms", terms}};
}

PolyMap polymap_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
    throw InputError("map JSON must be an object with \"n\" and \"terms\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw InputError("\"n\" must be a positive integer");
  }
  const int n = j["n"].get<int>();
  const json& terms = j["terms"];
  if (!terms.is_array() || terms.empty()) throw InputError("\"terms\" must be a non-empty array");

  PolyMap f(n);
  std::set<MultiIndex> seen;
  for (const json& t : terms) {
    if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff")) {
      throw InputError("each term needs \"exponents\" and \"coeff\"");
    }
    const json& ej = t["exponents"];
    if (!ej.is_array() || static_cast<int>(ej.size()) != n) {
      throw InputError("\"exponents\" must have exactly n entries");
    }
    MultiIndex e;
    for (const json& x : ej) {
      if (!x.is_number_integer() || x.get<long long>() < 0) {
        throw InputError("exponents must be nonnegative integers");
      }
      e.push_back(x.get<int>());
    }
    if (!seen.insert(e).second) throw InputError("duplicate exponent list in \"terms\"");
    f.add_term(e, complex_vector_from_json(t["coeff"], n));
  }
  f.prune();
  return f;
}

PolyMap load_polymap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open map file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return polymap_from_json(j);
}

}  // namespace blochcert
