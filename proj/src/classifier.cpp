#include "blochcert/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blochcert/errors.hpp"
#include "blochcert/polymap_json.hpp"
#include "blochcert/specnorm.hpp"

namespace blochcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSingularRel = 1e-12;

// |det f'| relative to ||f'||^n; scale-invariant measure of singularity.
double relative_det(const ComplexMatrix& j) {
  const double fro = j.norm();
  if (fro == 0.0) return 0.0;
  return std::abs(j.determinant()) / std::pow(fro, static_cast<double>(j.rows()));
}

Complex det_at(const PolyMap& f, const ComplexVector& z) { return jacobian(f, z).determinant(); }

// Minimum-norm Newton iteration on the holomorphic scalar det f'(z), seeking a
// zero inside the ball |z| <= rho. Returns the zero if one is found.
std::optional<ComplexVector> seek_det_zero(const PolyMap& f, ComplexVector z, double rho) {
  const auto n = z.size();
  constexpr double h = 1e-6;
  for (int it = 0; it < 40; ++it) {
    if (z.norm() > rho * (1.0 + 1e-12)) return std::nullopt;
    const ComplexMatrix jac = jacobian(f, z);
    if (relative_det(jac) < kSingularRel) return z;
    const Complex d = jac.determinant();
    ComplexVector grad(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      ComplexVector zp = z, zm = z;
      zp[k] += h;
      zm[k] -= h;
      grad[k] = (det_at(f, zp) - det_at(f, zm)) / (2.0 * h);
    }
    const double g2 = grad.squaredNorm();
    if (g2 == 0.0) return std::nullopt;
    z -= d * grad.conjugate() / g2;
  }
  return std::nullopt;
}

void require_k(double K) {
  if (!(K >= 1.0) || !std::isfinite(K)) throw InputError("K must be a finite number >= 1");
}

double bochner_ratio(const PolyMap& f, const ComplexVector& z) {
  const int n = f.dim();
  const ComplexMatrix j = jacobian(f, z);
  const double fro = j.norm();
  const double ad = std::abs(j.determinant());
  if (ad <= kSingularRel * std::pow(fro, n)) return kInf;
  return fro / std::pow(ad, 1.0 / n);
}

double bochner_slack(const PolyMap& f, double K, const ComplexVector& z) {
  const ComplexMatrix j = jacobian(f, z);
  const double slack = j.squaredNorm() - K * K * std::pow(std::abs(j.determinant()), 2.0 / f.dim());
  return std::max(0.0, slack);
}

double qr_slack(const PolyMap& f, double K, const ComplexVector& z) {
  const auto sv = singular_values(jacobian(f, z));
  return std::max(0.0, sv[sv.size() - 1] - K * sv[0]);
}

double qr_ratio(const PolyMap& f, const ComplexVector& z) {
  const auto sv = singular_values(jacobian(f, z));
  return sv[0] > 0.0 ? sv[sv.size() - 1] / sv[0] : kInf;
}

// Indices whose value beats every earlier value. For nested sample sets the
// records of the smaller set are a prefix of the records of the larger one.
std::vector<std::size_t> record_indices(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  double best = -kInf;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] > best) {
      best = values[k];
      out.push_back(k);
    }
  }
  return out;
}

// The points every estimate is maximized over: the samples followed by local
// ascents of several K-free objectives, started from their record samples.
// One K-independent set keeps the estimates monotone in K and consistent with
// each other.
struct Candidates {
  std::vector<ComplexVector> points;
  std::optional<ComplexVector> singular;  // a point where det f' vanishes
};

Candidates build_candidates(const PolyMap& f, const SampleConfig& cfg) {
  cfg.validate();
  const SampleSet samples(f.dim(), cfg);
  const double rho = cfg.radius;
  Candidates c;
  c.points.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) c.points.push_back(samples.point(k, rho));

  const std::vector<Objective> objectives{
      [&f](const ComplexVector& z) { return bochner_ratio(f, z); },
      [&f](const ComplexVector& z) { return bochner_slack(f, 1.0, z); },
      [&f](const ComplexVector& z) { return qr_slack(f, 1.0, z); },
      [&f](const ComplexVector& z) { return qr_ratio(f, z); },
  };

  std::vector<double> ratio = sample_values(samples, rho, objectives[0]);
  for (std::size_t k = 0; k < ratio.size() && !c.singular; ++k) {
    if (std::isinf(ratio[k])) c.singular = c.points[k];
  }
  if (!c.singular) {
    // Zeros of det f' miss the samples almost surely; chase them from the
    // record minima of the relative determinant.
    std::vector<double> neg_rel(samples.size());
    parallel_for(samples.size(), [&](std::size_t k) { neg_rel[k] = -relative_det(jacobian(f, c.points[k])); });
    for (std::size_t k : record_indices(neg_rel)) {
      if (auto zero = seek_det_zero(f, c.points[k], rho)) {
        c.singular = *zero;
        break;
      }
    }
  }

  const std::size_t base = c.points.size();
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    if (o == 0 && c.singular) continue;
    const std::vector<double> values = o == 0 ? ratio : sample_values(samples, rho, objectives[o]);
    const auto starts = record_indices(values);
    std::vector<ComplexVector> ends(starts.size());
    parallel_for(starts.size(), [&](std::size_t s) {
      ends[s] = local_ascent(objectives[o], c.points[starts[s]], rho, cfg.strategy, 0.1 * rho, 1e-10 * rho).point;
    });
    for (auto& e : ends) c.points.push_back(std::move(e));
  }
  if (!c.singular) {
    for (std::size_t k = base; k < c.points.size(); ++k) {
      if (std::isinf(bochner_ratio(f, c.points[k]))) {
        c.singular = c.points[k];
        break;
      }
    }
  }
  return c;
}

SupEstimate max_over(const Candidates& c, const Objective& objective) {
  std::vector<double> values(c.points.size());
  parallel_for(values.size(), [&](std::size_t k) { values[k] = objective(c.points[k]); });
  const std::size_t top = argmax_index(values);
  return {values[top], false, c.points[top]};
}

SupEstimate bochner_k_from(const PolyMap& f, const Candidates& c) {
  if (c.singular) return {kInf, true, *c.singular};
  return max_over(c, [&f](const ComplexVector& z) { return bochner_ratio(f, z); });
}

SupEstimate kprime_bochner_from(const PolyMap& f, double K, const Candidates& c) {
  return max_over(c, [&f, K](const ComplexVector& z) { return bochner_slack(f, K, z); });
}

SupEstimate kprime_qr_from(const PolyMap& f, double K, const Candidates& c) {
  return max_over(c, [&f, K](const ComplexVector& z) { return qr_slack(f, K, z); });
}

}  // namespace

SupEstimate estimate_bochner_k(const PolyMap& f, const SampleConfig& cfg) {
  return bochner_k_from(f, build_candidates(f, cfg));
}

SupEstimate estimate_kprime_bochner(const PolyMap& f, double K, const SampleConfig& cfg) {
  require_k(K);
  return kprime_bochner_from(f, K, build_candidates(f, cfg));
}

SupEstimate estimate_kprime_quasiregular(const PolyMap& f, double K, const SampleConfig& cfg) {
  require_k(K);
  return kprime_qr_from(f, K, build_candidates(f, cfg));
}

ClassReport classify(const PolyMap& f, double K, const SampleConfig& cfg) {
  require_k(K);
  const Candidates c = build_candidates(f, cfg);
  ClassReport r;
  r.K = K;
  r.bochner_k = bochner_k_from(f, c);
  r.bochner_k_floor = r.bochner_k.infinite ? kInf : std::max(1.0, r.bochner_k.value);
  r.kprime_at_k = kprime_bochner_from(f, K, c);
  r.qr_kprime_at_k = kprime_qr_from(f, K, c);

  const SampleSet samples(f.dim(), cfg);
  const auto absdet = sample_values(samples, cfg.radius, [&f](const ComplexVector& z) {
    return -std::abs(jacobian(f, z).determinant());
  });
  const std::size_t k = argmax_index(absdet);
  r.min_absdet_seen = -absdet[k];
  r.min_absdet_point = samples.point(k, cfg.radius);
  return r;
}

nlohmann::json to_json(const ClassReport& r) {
  return {
      {"K", r.K},
      {"bochner_k", r.bochner_k.infinite ? nlohmann::json("+inf") : nlohmann::json(r.bochner_k.value)},
      {"bochner_k_floor",
       r.bochner_k.infinite ? nlohmann::json("+inf") : nlohmann::json(r.bochner_k_floor)},
      {"kprime_at_k", r.kprime_at_k.value},
      {"qr_kprime_at_k", r.qr_kprime_at_k.value},
      {"min_absdet_seen", r.min_absdet_seen},
      {"argmax_points",
       {{"bochner_k", to_json(r.bochner_k.witness)},
        {"kprime_at_k", to_json(r.kprime_at_k.witness)},
        {"qr_kprime_at_k", to_json(r.qr_kprime_at_k.witness)},
        {"min_absdet", to_json(r.min_absdet_point)}}},
  };
}

PolyMap wu_map(int m) {
  if (m < 1) throw InputError("wu_map: m must be >= 1");
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = static_cast<double>(m);
  b(1, 1) = 1.0 / m;
  return PolyMap::linear(b);
}

PolyMap example_map() {
  // (z1 - 1/2)^2 + (z2 - 1/3)^2 = z1^2 - z1 + z2^2 - 2/3 z2 + 13/36
  PolyMap f(2);
  auto coeff = [](double a, double b) {
    ComplexVector c(2);
    c << a, b;
    return c;
  };
  f.add_term({1, 0}, coeff(1.0, -1.0));
  f.add_term({0, 1}, coeff(1.0, -2.0 / 3.0));
  f.add_term({2, 0}, coeff(0.0, 1.0));
  f.add_term({0, 2}, coeff(0.0, 1.0));
  f.add_term({0, 0}, coeff(0.0, 13.0 / 36.0));
  f.prune();
  return f;
}

}  // namespace blochcert
