#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "blochcert/holomap.hpp"

namespace blochcert {

enum class Strategy { sphere, ball };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct SampleConfig {
  std::size_t count = 4096;
  std::uint64_t seed = 42;
  double radius = 1.0 - 1e-6;
  Strategy strategy = Strategy::ball;

  /// Throws InputError unless count >= 1 and 0 < radius <= 1.
  void validate() const;
};

/// Scalar objective on C^n. Must be pure: it is evaluated from several threads.
using Objective = std::function<double(const ComplexVector&)>;

/// Seeded quasi-random points: unit directions on S^{2n-1} plus radial
/// fractions distributing points uniformly in the unit ball.
///
/// Built from a Halton sequence with a seeded Cranley-Patterson shift, so the
/// first k points of a larger set equal the set of size k for the same seed.
/// For the ball strategy the first point is always the origin.
class SampleSet {
 public:
  SampleSet(int n, const SampleConfig& cfg);

  int dim() const { return n_; }
  std::size_t size() const { return directions_.size(); }
  Strategy strategy() const { return strategy_; }

  /// k-th point scaled to a sphere/ball of radius rho around `center`.
  ComplexVector point(std::size_t k, double rho) const;
  ComplexVector point(std::size_t k, double rho, const ComplexVector& center) const;

 private:
  int n_;
  Strategy strategy_;
  std::vector<ComplexVector> directions_;
  std::vector<double> radial_;
};

/// Runs body(i) for i in [0, count), possibly on several threads. Each index
/// is visited exactly once; callers write results into per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Index of the largest value; ties go to the smallest index and NaN never wins.
std::size_t argmax_index(const std::vector<double>& values);

struct SampledMax {
  double value = 0.0;
  ComplexVector argmax;
  std::size_t index = 0;  // sample index the maximum started from
  double min_value = 0.0;  // smallest finite sampled value (before polishing)
};

/// Objective values at every sample point of the radius-rho sphere/ball.
std::vector<double> sample_values(const SampleSet& samples, double rho, const Objective& objective);

/// Sampled maximum over the radius-rho sphere/ball; optionally polished by
/// coordinate-wise ascent from the best sample.
SampledMax sampled_max(const SampleSet& samples, double rho, const Objective& objective,
                       bool polish = true);

struct AscentResult {
  ComplexVector point;
  double value = 0.0;
};

/// Coordinate-wise ascent over the 2n real coordinates with step halving.
/// Points stay on the sphere |z| = rho (sphere strategy) or in |z| <= rho (ball).
AscentResult local_ascent(const Objective& objective, const ComplexVector& start, double rho,
                          Strategy strategy, double initial_step, double min_step = 1e-10);

}  // namespace blochcert
