#pragma once

#include <cstddef>
#include <optional>

#include "json.hpp"

#include "blochcert/certifier.hpp"
#include "blochcert/errors.hpp"
#include "blochcert/holomap.hpp"
#include "blochcert/sampling.hpp"

namespace blochcert {

/// Two well-separated points with (numerically) equal images.
struct Collision {
  ComplexVector z1;
  ComplexVector z2;
  double image_gap = 0.0;  // |f(z1) - f(z2)|
};

struct InjectivityResult {
  bool injective = true;
  std::optional<Collision> collision;
  std::size_t pairs_tested = 0;
};

struct CoverageResult {
  bool covered = true;
  std::optional<ComplexVector> uncovered;
  std::size_t targets_tested = 0;
  std::size_t newton_failures = 0;
};

struct OracleReport {
  bool injective = true;
  std::optional<Collision> collision;
  bool covered = true;
  std::optional<ComplexVector> uncovered;
  double empirical_radius = 0.0;
  double certified_radius = 0.0;
  std::size_t targets_tested = 0;
  std::size_t newton_failures = 0;
  ComplexVector domain_center;
  double domain_radius = 0.0;

  bool valid() const { return injective && covered && empirical_radius >= certified_radius; }
};

class NotInjective : public DomainError {
 public:
  NotInjective(const std::string& what, Collision c) : DomainError(what), collision(std::move(c)) {}
  Collision collision;
};

/// Separation / collision thresholds for injectivity, absolute in unit-ball scale.
inline constexpr double kSeparation = 1e-4;
inline constexpr double kCollision = 1e-8;
/// Residual a Newton solve must reach for a target to count as hit.
inline constexpr double kTargetResidual = 1e-9;

struct NewtonResult {
  bool converged = false;
  ComplexVector z;
  double residual = 0.0;
};

/// Damped Newton for f(z) = target from `start` (step halving up to 20 times).
NewtonResult newton_solve(const PolyMap& f, const ComplexVector& start, const ComplexVector& target,
                          double tol, int max_iter = 40);

/// Straight-line homotopy from f(start) to target in `steps` nodes, with a
/// damped Newton correction at each node.
NewtonResult homotopy_solve(const PolyMap& f, const ComplexVector& start, const ComplexVector& target,
                            int steps = 32);

InjectivityResult injectivity_check(const PolyMap& f, const ComplexVector& center, double rho,
                                    const SampleConfig& cfg);

/// Whether every target on |w - image_center| = R and on five interior shells
/// has a preimage in B(domain_center, domain_rho).
CoverageResult covers_ball(const PolyMap& f, const ComplexVector& domain_center, double domain_rho,
                           const ComplexVector& image_center, double R, const SampleConfig& cfg,
                           bool stop_at_first_failure = false);

/// Largest verified R (12 bisection steps) such that the image of the domain
/// ball covers B(image_center, R). Throws NotInjective if the domain ball fails
/// the injectivity check.
double empirical_schlicht_radius(const PolyMap& f, const ComplexVector& domain_center,
                                 double domain_rho, const ComplexVector& image_center,
                                 const SampleConfig& cfg);

OracleReport validate_certificate(const PolyMap& f, const CertifiedBall& ball, const SampleConfig& cfg);

nlohmann::json to_json(const OracleReport& r);

}  // namespace blochcert
