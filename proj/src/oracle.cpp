#include "blochcert/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "blochcert/polymap_json.hpp"
#include "blochcert/specnorm.hpp"

namespace blochcert {

namespace {

constexpr int kHalvings = 20;
constexpr int kShells = 5;
constexpr int kBisections = 12;
constexpr std::size_t kChunk = 64;

void check_domain(const ComplexVector& center, double rho, const char* what) {
  if (!(rho > 0.0)) throw InputError(std::string(what) + ": radius must be positive");
  if (center.norm() + rho > 1.0 + 1e-9) {
    throw InputError(std::string(what) + ": ball leaves the unit ball");
  }
}

SampleConfig with_strategy(SampleConfig cfg, Strategy s) {
  cfg.strategy = s;
  return cfg;
}

}  // namespace

NewtonResult newton_solve(const PolyMap& f, const ComplexVector& start, const ComplexVector& target,
                          double tol, int max_iter) {
  NewtonResult out{false, start, 0.0};
  ComplexVector value;
  ComplexMatrix jac;
  evaluate_with_jacobian(f, out.z, value, jac);
  out.residual = (value - target).norm();
  for (int it = 0; it < max_iter && out.residual >= tol; ++it) {
    const Eigen::PartialPivLU<ComplexMatrix> lu(jac);
    if (!(lu.rcond() > 1e-14)) return out;
    const ComplexVector step = lu.solve(value - target);
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kHalvings; ++h, t *= 0.5) {
      const ComplexVector trial = out.z - t * step;
      const double r = (evaluate(f, trial) - target).norm();
      if (r < out.residual) {
        out.z = trial;
        out.residual = r;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    evaluate_with_jacobian(f, out.z, value, jac);
  }
  out.converged = out.residual < tol;
  return out;
}

NewtonResult homotopy_solve(const PolyMap& f, const ComplexVector& start, const ComplexVector& target,
                            int steps) {
  const ComplexVector origin_image = evaluate(f, start);
  NewtonResult cur{true, start, 0.0};
  for (int k = 1; k <= steps; ++k) {
    const double s = static_cast<double>(k) / steps;
    const ComplexVector node = origin_image + s * (target - origin_image);
    const double tol = k == steps ? 1e-12 : 1e-10;
    cur = newton_solve(f, cur.z, node, tol);
    if (k < steps && !(cur.residual < 1e-6)) {
      cur.converged = false;
      return cur;
    }
  }
  cur.converged = cur.residual < kTargetResidual;
  return cur;
}

InjectivityResult injectivity_check(const PolyMap& f, const ComplexVector& center, double rho,
                                    const SampleConfig& cfg) {
  check_domain(center, rho, "injectivity_check");
  const SampleSet samples(f.dim(), with_strategy(cfg, Strategy::ball));
  const std::size_t count = samples.size();

  auto in_ball = [&](const ComplexVector& z) { return (z - center).norm() <= rho * (1.0 + 1e-9); };
  auto try_pair = [&](const ComplexVector& z, const ComplexVector& seed) -> std::optional<Collision> {
    const ComplexVector fz = evaluate(f, z);
    const auto sol = newton_solve(f, seed, fz, 1e-13);
    const double gap = (evaluate(f, sol.z) - fz).norm();
    if (in_ball(sol.z) && (sol.z - z).norm() > kSeparation && gap < kCollision) {
      return Collision{z, sol.z, gap};
    }
    return std::nullopt;
  };

  std::vector<std::optional<Collision>> found(count);
  std::vector<char> singular(count, 0);
  parallel_for(count, [&](std::size_t i) {
    const ComplexVector z = samples.point(i, rho, center);
    const ComplexMatrix jac = jacobian(f, z);
    if (sigma_min(jac) < 1e-10) {
      singular[i] = 1;
      // Fold along the kernel direction: look for a partner of z + t v near z - t v.
      Eigen::JacobiSVD<ComplexMatrix> svd(jac, Eigen::ComputeFullV);
      const ComplexVector v = svd.matrixV().col(f.dim() - 1);
      for (double t : {1e-2, 1e-3}) {
        const ComplexVector a = z + t * rho * v;
        const ComplexVector b = z - t * rho * v;
        if (!in_ball(a) || !in_ball(b)) continue;
        if ((found[i] = try_pair(a, b))) return;
      }
      return;
    }
    // Pair with the reflection through the center, or with another sample.
    const ComplexVector seed =
        i % 2 == 0 ? ComplexVector(2.0 * center - z) : samples.point((i * 7919 + 1) % count, rho, center);
    found[i] = try_pair(z, seed);
  });

  InjectivityResult out;
  out.pairs_tested = count;
  for (auto& c : found) {
    if (c) {
      out.injective = false;
      out.collision = std::move(c);
      return out;
    }
  }
  // A singular Jacobian is local non-injectivity even without an explicit pair.
  for (std::size_t i = 0; i < count; ++i) {
    if (singular[i]) {
      const ComplexVector z = samples.point(i, rho, center);
      out.injective = false;
      out.collision = Collision{z, z, 0.0};
      return out;
    }
  }
  return out;
}

CoverageResult covers_ball(const PolyMap& f, const ComplexVector& domain_center, double domain_rho,
                           const ComplexVector& image_center, double R, const SampleConfig& cfg,
                           bool stop_at_first_failure) {
  check_domain(domain_center, domain_rho, "covers_ball");
  if (!(R >= 0.0)) throw InputError("covers_ball: R must be nonnegative");
  const int n = f.dim();
  const SampleSet dirs(n, with_strategy(cfg, Strategy::sphere));
  const std::size_t per_shell = std::max<std::size_t>(1, dirs.size() / kShells);

  // The full sphere first, then shells at R * 5/6, ..., R * 1/6.
  std::vector<ComplexVector> targets;
  targets.reserve(dirs.size() + kShells * per_shell);
  for (std::size_t k = 0; k < dirs.size(); ++k) targets.push_back(dirs.point(k, R, image_center));
  for (int s = kShells; s >= 1; --s) {
    const double shell = R * s / (kShells + 1.0);
    for (std::size_t k = 0; k < per_shell; ++k) {
      targets.push_back(dirs.point((k * kShells + s) % dirs.size(), shell, image_center));
    }
  }

  enum class Outcome { hit, outside, failed };
  std::vector<Outcome> outcome(targets.size(), Outcome::hit);
  CoverageResult out;
  for (std::size_t begin = 0; begin < targets.size(); begin += kChunk) {
    const std::size_t end = std::min(targets.size(), begin + kChunk);
    parallel_for(end - begin, [&](std::size_t i) {
      const auto sol = homotopy_solve(f, domain_center, targets[begin + i]);
      if (!sol.converged) {
        outcome[begin + i] = Outcome::failed;
      } else if ((sol.z - domain_center).norm() > domain_rho + 1e-9) {
        outcome[begin + i] = Outcome::outside;
      }
    });
    for (std::size_t i = begin; i < end; ++i) {
      ++out.targets_tested;
      if (outcome[i] == Outcome::failed) ++out.newton_failures;
      if (outcome[i] != Outcome::hit && out.covered) {
        out.covered = false;
        out.uncovered = targets[i];
      }
    }
    if (stop_at_first_failure && !out.covered) break;
  }
  return out;
}

double empirical_schlicht_radius(const PolyMap& f, const ComplexVector& domain_center,
                                 double domain_rho, const ComplexVector& image_center,
                                 const SampleConfig& cfg) {
  const auto inj = injectivity_check(f, domain_center, domain_rho, cfg);
  if (!inj.injective) throw NotInjective("domain ball is not injective under f", *inj.collision);

  // No ball around image_center reaching past the farthest image point fits.
  const SampleSet samples(f.dim(), with_strategy(cfg, Strategy::ball));
  double reach = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    reach = std::max(reach, (evaluate(f, samples.point(k, domain_rho, domain_center)) - image_center).norm());
  }
  const SampleSet rim(f.dim(), with_strategy(cfg, Strategy::sphere));
  for (std::size_t k = 0; k < rim.size(); ++k) {
    reach = std::max(reach, (evaluate(f, rim.point(k, domain_rho, domain_center)) - image_center).norm());
  }
  double lo = 0.0;
  double hi = 2.0 * reach;
  for (int it = 0; it < kBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (covers_ball(f, domain_center, domain_rho, image_center, mid, cfg, true).covered) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

OracleReport validate_certificate(const PolyMap& f, const CertifiedBall& ball, const SampleConfig& cfg) {
  if (ball.center.size() != f.dim() || ball.witness.landau_point.size() != f.dim()) {
    throw InputError("validate_certificate: certificate dimension does not match the map");
  }
  OracleReport r;
  r.domain_center = ball.witness.landau_point;
  r.domain_radius = ball.witness.domain_radius;
  r.certified_radius = ball.radius;

  const auto inj = injectivity_check(f, r.domain_center, r.domain_radius, cfg);
  r.injective = inj.injective;
  r.collision = inj.collision;

  const auto cov = covers_ball(f, r.domain_center, r.domain_radius, ball.center, ball.radius, cfg);
  r.covered = cov.covered;
  r.uncovered = cov.uncovered;
  r.targets_tested = cov.targets_tested;
  r.newton_failures = cov.newton_failures;

  if (r.injective) {
    r.empirical_radius = empirical_schlicht_radius(f, r.domain_center, r.domain_radius, ball.center, cfg);
  }
  return r;
}

nlohmann::json to_json(const OracleReport& r) {
  nlohmann::json collision = nullptr;
  if (r.collision) {
    collision = {{"z1", to_json(r.collision->z1)},
                 {"z2", to_json(r.collision->z2)},
                 {"image_gap", r.collision->image_gap}};
  }
  return {
      {"injective", r.injective},
      {"collision", collision},
      {"covered", r.covered},
      {"uncovered_target", r.uncovered ? to_json(*r.uncovered) : nlohmann::json(nullptr)},
      {"empirical_radius", r.empirical_radius},
      {"certified_radius", r.certified_radius},
      {"targets_tested", r.targets_tested},
      {"newton_failures", r.newton_failures},
      {"domain_center", to_json(r.domain_center)},
      {"domain_radius", r.domain_radius},
      {"valid", r.valid()},
  };
}

}  // namespace blochcert
