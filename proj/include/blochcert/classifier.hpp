#pragma once

#include <optional>

#include "json.hpp"

#include "blochcert/holomap.hpp"
#include "blochcert/sampling.hpp"

namespace blochcert {

/// Sampled estimate of a supremum together with the point attaining it.
struct SupEstimate {
  double value = 0.0;
  bool infinite = false;  // sentinel: the quantity is unbounded on the sampled ball
  ComplexVector witness;
};

/// Max of ||f'|| / |det f'|^{1/n}; infinite once |det f'| < 1e-12 ||f'||^n at some point.
SupEstimate estimate_bochner_k(const PolyMap& f, const SampleConfig& cfg);

/// Smallest K' with ||f'||^2 <= K^2 |det f'|^{2/n} + K' at every sampled point.
SupEstimate estimate_kprime_bochner(const PolyMap& f, double K, const SampleConfig& cfg);

/// Smallest K' with Lambda_f <= K lambda_f + K' at every sampled point.
SupEstimate estimate_kprime_quasiregular(const PolyMap& f, double K, const SampleConfig& cfg);

struct ClassReport {
  double K = 1.0;  // the K at which the K' estimates were taken
  SupEstimate bochner_k;
  double bochner_k_floor = 1.0;  // max(raw, 1); the classes need K >= 1
  SupEstimate kprime_at_k;
  SupEstimate qr_kprime_at_k;
  double min_absdet_seen = 0.0;
  ComplexVector min_absdet_point;
};

ClassReport classify(const PolyMap& f, double K, const SampleConfig& cfg);

nlohmann::json to_json(const ClassReport& r);

/// (m z_1, z_2 / m): unit Jacobian determinant, unbounded Bochner constant as m grows.
PolyMap wu_map(int m);

/// (z_1 + z_2, (z_1 - 1/2)^2 + (z_2 - 1/3)^2): Bochner (1, 20) but not Bochner K for any K.
PolyMap example_map();

}  // namespace blochcert
