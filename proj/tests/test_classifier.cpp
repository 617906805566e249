#include <cmath>

#include "doctest.h"

#include "blochcert/classifier.hpp"
#include "blochcert/corpus.hpp"
#include "blochcert/errors.hpp"
#include "blochcert/specnorm.hpp"
#include "test_support.hpp"

using namespace blochcert;
using namespace blochcert::testing;

namespace {

SampleConfig small_cfg(std::size_t count = 1024) {
  SampleConfig c;
  c.count = count;
  return c;
}

}  // namespace

TEST_CASE("Bochner constant of linear maps") {
  const auto id = estimate_bochner_k(PolyMap::identity(2), small_cfg());
  CHECK_FALSE(id.infinite);
  CHECK(id.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto wu = estimate_bochner_k(wu_map(2), small_cfg());
  CHECK(wu.value == doctest::Approx(2.0615528128088303).epsilon(1e-12));

  const auto wu5 = estimate_bochner_k(wu_map(5), small_cfg());
  CHECK(wu5.value == doctest::Approx(std::sqrt(25.0 + 1.0 / 25.0)).epsilon(1e-12));

  ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
  CHECK(estimate_bochner_k(PolyMap::linear(id3), small_cfg()).value ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("the example map has no finite Bochner K") {
  const auto k = estimate_bochner_k(example_map(), small_cfg());
  CHECK(k.infinite);
  REQUIRE(k.witness.size() == 2);
  CHECK(k.witness.norm() <= 1.0);
  const auto sd = spectral_data(jacobian(example_map(), k.witness));
  CHECK(sd.absdet <= 1e-12 * std::pow(sd.opnorm, 2) * 2.0 + 1e-12);
}

TEST_CASE("K' estimates for fixture maps") {
  CHECK(estimate_kprime_bochner(PolyMap::identity(2), std::sqrt(2.0), small_cfg()).value == 0.0);
  CHECK(estimate_kprime_bochner(PolyMap::identity(2), 1.0, small_cfg()).value ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Oracle: sup over the ball of ||f'||^2 - |det f'| for the example map,
  // computed independently by dense real-slice search plus Nelder-Mead.
  const double kp = estimate_kprime_bochner(example_map(), 1.0, small_cfg()).value;
  CHECK(kp <= 20.0);
  CHECK(kp > 11.0);
  SampleConfig dense;
  dense.count = 16384;
  const double kp_dense = estimate_kprime_bochner(example_map(), 1.0, dense).value;
  CHECK(kp_dense == doctest::Approx(12.01453).epsilon(1e-3));

  CHECK(estimate_kprime_quasiregular(PolyMap::identity(2), 1.0, small_cfg()).value == 0.0);
  CHECK(estimate_kprime_quasiregular(wu_map(2), 1.0, small_cfg()).value ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(estimate_kprime_quasiregular(wu_map(2), 4.0, small_cfg()).value == 0.0);

  CHECK_THROWS_AS(estimate_kprime_bochner(PolyMap::identity(2), 0.5, small_cfg()), InputError);
  CHECK_THROWS_AS(estimate_kprime_quasiregular(PolyMap::identity(2), 0.5, small_cfg()), InputError);
}

TEST_CASE("K' is non-increasing in K") {
  std::vector<PolyMap> maps{example_map(), wu_map(3)};
  for (int k = 0; k < 3; ++k) maps.push_back(random_quadratic_perturbation(2, 0.1, 100 + k));
  for (const auto& f : maps) {
    double prev_b = std::numeric_limits<double>::infinity();
    double prev_q = prev_b;
    for (double K : {1.0, 1.2, 1.5, 2.0, 3.0, 5.0}) {
      const double b = estimate_kprime_bochner(f, K, small_cfg(512)).value;
      const double q = estimate_kprime_quasiregular(f, K, small_cfg(512)).value;
      CHECK(b <= prev_b + 1e-12);
      CHECK(q <= prev_q + 1e-12);
      CHECK(b >= 0.0);
      CHECK(q >= 0.0);
      prev_b = b;
      prev_q = q;
    }
  }
}

TEST_CASE("K' at the estimated Bochner K is zero") {
  for (int k = 0; k < 8; ++k) {
    const PolyMap f = random_quadratic_perturbation(2 + k % 2, 0.1, 200 + k);
    const auto kk = estimate_bochner_k(f, small_cfg());
    REQUIRE_FALSE(kk.infinite);
    const double K = std::max(1.0, kk.value);
    CHECK(estimate_kprime_bochner(f, K, small_cfg()).value <= 1e-9);
  }
}

TEST_CASE("estimates grow with the sample count and are deterministic") {
  const PolyMap f = random_quadratic_perturbation(2, 0.15, 300);
  double prev = 0.0;
  for (std::size_t count : {64u, 256u, 1024u, 4096u}) {
    SampleConfig c = small_cfg(count);
    const auto s = estimate_bochner_k(f, c);
    // Raw sample maxima nest, and polishing only goes up.
    CHECK(s.value >= prev - 1e-12);
    prev = std::max(prev, s.value);
  }

  const auto a = classify(example_map(), 1.0, small_cfg(512));
  const auto b = classify(example_map(), 1.0, small_cfg(512));
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("class report JSON") {
  const auto r = classify(example_map(), 1.0, small_cfg(512));
  const auto j = to_json(r);
  CHECK(j["bochner_k"] == "+inf");
  CHECK(j["bochner_k_floor"] == "+inf");
  CHECK(j["kprime_at_k"].get<double>() <= 20.0);

  const auto id = to_json(classify(PolyMap::identity(2), 1.0, small_cfg(256)));
  CHECK(id["bochner_k"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  CHECK(id["bochner_k_floor"].get<double>() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("wu maps have unit determinant") {
  for (int m = 1; m <= 8; ++m) {
    const auto j = jacobian(wu_map(m), ComplexVector::Zero(2));
    CHECK(std::abs(j.determinant()) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(wu_map(1).terms() == PolyMap::identity(2).terms());
}
