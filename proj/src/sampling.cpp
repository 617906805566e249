#include "blochcert/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "blochcert/errors.hpp"

namespace blochcert {

namespace {

constexpr std::array<int, 40> kPrimes = {2,   3,   5,   7,   11,  13,  17,  19,  23,  29,
                                         31,  37,  41,  43,  47,  53,  59,  61,  67,  71,
                                         73,  79,  83,  89,  97,  101, 103, 107, 109, 113,
                                         127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

double radical_inverse(std::uint64_t i, int base) {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Keeps a shifted coordinate strictly inside (0, 1).
double wrap(double u) {
  u -= std::floor(u);
  return std::clamp(u, 1e-300, 1.0 - 1e-16);
}

void project(ComplexVector& z, double rho, Strategy strategy) {
  const double r = z.norm();
  if (strategy == Strategy::sphere) {
    if (r > 0.0) z *= rho / r;
  } else if (r > rho) {
    z *= rho / r;
  }
}

}  // namespace

std::string to_string(Strategy s) { return s == Strategy::sphere ? "sphere" : "ball"; }

Strategy strategy_from_string(const std::string& s) {
  if (s == "sphere") return Strategy::sphere;
  if (s == "ball") return Strategy::ball;
  throw InputError("unknown sampling strategy: " + s);
}

void SampleConfig::validate() const {
  if (count < 1) throw InputError("sample count must be >= 1");
  if (!(radius > 0.0 && radius <= 1.0)) throw InputError("sample radius must lie in (0, 1]");
}

SampleSet::SampleSet(int n, const SampleConfig& cfg) : n_(n), strategy_(cfg.strategy) {
  cfg.validate();
  if (2 * n + 1 > static_cast<int>(kPrimes.size())) {
    throw InputError("SampleSet: dimension too large for the Halton bases");
  }
  const int dims = 2 * n + 1;
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> shift(dims);
  for (double& s : shift) s = unit_double(rng);

  directions_.reserve(cfg.count);
  radial_.reserve(cfg.count);
  std::vector<double> u(dims);
  for (std::size_t k = 0; k < cfg.count; ++k) {
    for (int d = 0; d < dims; ++d) u[d] = wrap(radical_inverse(k + 1, kPrimes[d]) + shift[d]);
    // Box-Muller turns each coordinate pair into two independent normals.
    ComplexVector z(n);
    for (int j = 0; j < n; ++j) {
      const double r = std::sqrt(-2.0 * std::log(u[2 * j]));
      const double t = 2.0 * std::numbers::pi * u[2 * j + 1];
      z[j] = Complex(r * std::cos(t), r * std::sin(t));
    }
    const double len = z.norm();
    if (len > 0.0) {
      z /= len;
    } else {
      z = ComplexVector::Unit(n, 0);
    }
    directions_.push_back(std::move(z));
    radial_.push_back(std::pow(u[dims - 1], 1.0 / (2.0 * n)));
  }
  if (strategy_ == Strategy::ball) radial_[0] = 0.0;
}

ComplexVector SampleSet::point(std::size_t k, double rho) const {
  const double r = strategy_ == Strategy::sphere ? rho : rho * radial_[k];
  return r * directions_[k];
}

ComplexVector SampleSet::point(std::size_t k, double rho, const ComplexVector& center) const {
  return center + point(k, rho);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, count / 256 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
}

std::size_t argmax_index(const std::vector<double>& values) {
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (!found || values[i] > best_value) {
      best = i;
      best_value = values[i];
      found = true;
    }
  }
  return best;
}

std::vector<double> sample_values(const SampleSet& samples, double rho, const Objective& objective) {
  std::vector<double> values(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) { values[k] = objective(samples.point(k, rho)); });
  return values;
}

SampledMax sampled_max(const SampleSet& samples, double rho, const Objective& objective,
                       bool polish) {
  const auto values = sample_values(samples, rho, objective);
  SampledMax out;
  out.index = argmax_index(values);
  out.value = values[out.index];
  out.argmax = samples.point(out.index, rho);
  out.min_value = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (std::isfinite(v)) out.min_value = std::min(out.min_value, v);
  }
  if (polish && rho > 0.0 && std::isfinite(out.value)) {
    const auto polished =
        local_ascent(objective, out.argmax, rho, samples.strategy(), 0.1 * rho, 1e-8 * rho);
    if (polished.value > out.value) {
      out.value = polished.value;
      out.argmax = polished.point;
    }
  }
  return out;
}

AscentResult local_ascent(const Objective& objective, const ComplexVector& start, double rho,
                          Strategy strategy, double initial_step, double min_step) {
  AscentResult best{start, objective(start)};
  if (!std::isfinite(best.value)) return best;
  const auto n = start.size();
  const auto real_dim = 2 * n;
  auto unit = [](Eigen::Index k) { return k % 2 == 0 ? Complex(1, 0) : Complex(0, 1); };
  auto try_move = [&](ComplexVector trial) {
    project(trial, rho, strategy);
    const double v = objective(trial);
    if (v > best.value) {
      best = {std::move(trial), v};
      return true;
    }
    return false;
  };
  double step = initial_step;
  constexpr int kMaxSweepsPerStep = 8;
  while (step >= min_step) {
    for (int sweep = 0; sweep < kMaxSweepsPerStep; ++sweep) {
      bool improved = false;
      for (Eigen::Index k = 0; k < real_dim; ++k) {
        for (const double sign : {1.0, -1.0}) {
          ComplexVector trial = best.point;
          trial[k / 2] += sign * step * unit(k);
          improved |= try_move(std::move(trial));
        }
      }
      // diagonal moves in coordinate pairs, for ridges where the objective has a kink
      if (!improved) {
        const double d = step * std::sqrt(0.5);
        for (Eigen::Index a = 0; a < real_dim; ++a) {
          for (Eigen::Index b = a + 1; b < real_dim; ++b) {
            for (const double sa : {1.0, -1.0}) {
              for (const double sb : {1.0, -1.0}) {
                ComplexVector trial = best.point;
                trial[a / 2] += sa * d * unit(a);
                trial[b / 2] += sb * d * unit(b);
                improved |= try_move(std::move(trial));
              }
            }
          }
        }
      }
      if (!improved) break;
    }
    step *= 0.5;
  }
  return best;
}

}  // namespace blochcert
