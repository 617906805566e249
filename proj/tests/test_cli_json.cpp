#include "doctest.h"

#include "blochcert/errors.hpp"
#include "blochcert/corpus.hpp"
#include "blochcert/polymap_json.hpp"
#include "test_support.hpp"

using namespace blochcert;
using namespace blochcert::testing;
using nlohmann::json;

TEST_CASE("polymap JSON parses the documented schema") {
  const auto j = json::parse(R"({"n": 2, "terms": [
      {"exponents": [1, 0], "coeff": [[1, 0], [0, 0]]},
      {"exponents": [0, 1], "coeff": [[0, 0], [1, 0]]}]})");
  const PolyMap f = polymap_from_json(j);
  CHECK(f.terms() == PolyMap::identity(2).terms());
}

TEST_CASE("polymap JSON rejects schema violations") {
  const char* bad[] = {
      R"([])",
      R"({"terms": []})",
      R"({"n": 2})",
      R"({"n": 0, "terms": []})",
      R"({"n": 2.5, "terms": []})",
      R"({"n": 2, "terms": [{"exponents": [1], "coeff": [[1,0],[0,0]]}]})",
      R"({"n": 2, "terms": [{"exponents": [1, 0], "coeff": [[1,0]]}]})",
      R"({"n": 2, "terms": [{"exponents": [-1, 0], "coeff": [[1,0],[0,0]]}]})",
      R"({"n": 2, "terms": [{"exponents": [1.5, 0], "coeff": [[1,0],[0,0]]}]})",
      R"({"n": 2, "terms": [{"exponents": [1, 0], "coeff": [[1,0,0],[0,0]]}]})",
      R"({"n": 2, "terms": [{"exponents": [1, 0], "coeff": [["a",0],[0,0]]}]})",
      R"({"n": 2, "terms": [{"exponents": [1, 0]}]})",
      R"({"n": 2, "terms": [{"exponents": [1, 0], "coeff": [[1,0],[0,0]]},
                            {"exponents": [1, 0], "coeff": [[2,0],[0,0]]}]})",
  };
  for (const char* s : bad) {
    CAPTURE(s);
    CHECK_THROWS_AS(polymap_from_json(json::parse(s)), InputError);
  }
  CHECK_THROWS_AS(load_polymap("/nonexistent/map.json"), InputError);
}

TEST_CASE("polymap JSON round trips exactly") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const PolyMap f = random_polymap(2 + trial % 3, 4, 7, rng);
    const PolyMap g = polymap_from_json(json::parse(to_json(f).dump()));
    CHECK(g.terms() == f.terms());
  }
  const PolyMap p = random_quadratic_perturbation(3, 0.1, 7);
  CHECK(polymap_from_json(to_json(p)).terms() == p.terms());
}

TEST_CASE("complex vectors") {
  const auto v = cvec({Complex(0.1, -0.2), Complex(1.0 / 3.0, 0.0)});
  const auto j = to_json(v);
  CHECK(j.dump() == "[[0.1,-0.2],[0.3333333333333333,0.0]]");
  CHECK(complex_vector_from_json(j, 2) == v);
  CHECK_THROWS_AS(complex_vector_from_json(j, 3), InputError);
}
