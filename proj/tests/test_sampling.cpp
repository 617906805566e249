#include <atomic>
#include <cmath>
#include <limits>

#include "doctest.h"

#include "blochcert/errors.hpp"
#include "blochcert/sampling.hpp"

using namespace blochcert;

TEST_CASE("sample points stay on the sphere or inside the ball") {
  for (int n : {2, 3}) {
    SampleConfig cfg;
    cfg.count = 2000;
    cfg.strategy = Strategy::sphere;
    const SampleSet sphere(n, cfg);
    for (std::size_t k = 0; k < sphere.size(); ++k)
      CHECK(std::abs(sphere.point(k, 0.7).norm() - 0.7) < 1e-12);

    cfg.strategy = Strategy::ball;
    const SampleSet ball(n, cfg);
    CHECK(ball.point(0, 0.7).norm() == 0.0);
    double outer = 0.0;
    for (std::size_t k = 0; k < ball.size(); ++k) {
      const double r = ball.point(k, 0.7).norm();
      CHECK(r <= 0.7 + 1e-12);
      outer = std::max(outer, r);
    }
    CHECK(outer > 0.65);
  }
}

TEST_CASE("samples are deterministic per seed and nested by count") {
  SampleConfig a;
  a.count = 300;
  a.seed = 7;
  SampleConfig b = a;
  b.count = 1000;
  SampleConfig c = a;
  c.seed = 8;
  const SampleSet sa(3, a), sb(3, b), sa2(3, a), sc(3, c);
  for (std::size_t k = 0; k < sa.size(); ++k) {
    CHECK((sa.point(k, 1.0) - sb.point(k, 1.0)).norm() == 0.0);
    CHECK((sa.point(k, 1.0) - sa2.point(k, 1.0)).norm() == 0.0);
  }
  CHECK((sa.point(5, 1.0) - sc.point(5, 1.0)).norm() > 0.0);
}

TEST_CASE("point with a center translates") {
  SampleConfig cfg;
  cfg.count = 10;
  const SampleSet s(2, cfg);
  ComplexVector c(2);
  c << Complex(0.1, 0.2), Complex(-0.3, 0.0);
  CHECK((s.point(3, 0.2, c) - c - s.point(3, 0.2)).norm() < 1e-15);
}

TEST_CASE("config validation and strategy names") {
  SampleConfig cfg;
  cfg.count = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.count = 1;
  cfg.radius = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.radius = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  CHECK(strategy_from_string("sphere") == Strategy::sphere);
  CHECK(to_string(Strategy::ball) == "ball");
  CHECK_THROWS_AS(strategy_from_string("cube"), InputError);
}

TEST_CASE("argmax_index breaks ties low and skips NaN") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(argmax_index({1.0, 3.0, 3.0, 2.0}) == 1);
  CHECK(argmax_index({nan, 0.5, nan}) == 1);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(50000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  int bad = 0;
  for (auto& h : hits) bad += h.load() != 1;
  CHECK(bad == 0);
}

TEST_CASE("sampled_max with polishing finds smooth maxima") {
  SampleConfig cfg;
  cfg.count = 256;
  cfg.strategy = Strategy::sphere;
  const SampleSet s(2, cfg);
  const Objective re_z1 = [](const ComplexVector& z) { return z[0].real(); };
  const auto m = sampled_max(s, 0.5, re_z1);
  CHECK(m.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(m.argmax.norm() - 0.5) < 1e-12);

  const auto raw = sampled_max(s, 0.5, re_z1, false);
  CHECK(raw.value <= m.value);

  SampleConfig bc = cfg;
  bc.strategy = Strategy::ball;
  const SampleSet b(2, bc);
  const Objective bump = [](const ComplexVector& z) {
    return -std::norm(z[0] - Complex(0.1, 0.0)) - std::norm(z[1]);
  };
  const auto mb = sampled_max(b, 1.0, bump);
  CHECK(mb.value > -1e-12);
  CHECK(std::abs(mb.argmax[0] - Complex(0.1, 0.0)) < 1e-5);
}
