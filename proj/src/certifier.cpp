#include "blochcert/certifier.hpp"

#include <cmath>

#include "blochcert/classifier.hpp"
#include "blochcert/errors.hpp"
#include "blochcert/polymap_json.hpp"
#include "blochcert/specnorm.hpp"

namespace blochcert {

namespace {

constexpr int kLandauGrid = 1000;
constexpr double kBisectTol = 1e-9;

void check_constants(double K, double Kp) {
  if (!(K >= 1.0) || !std::isfinite(K)) throw InputError("K must be a finite number >= 1");
  if (!(Kp >= 0.0) || !std::isfinite(Kp)) throw InputError("K' must be a finite number >= 0");
}

SampleConfig with_strategy(SampleConfig cfg, Strategy s) {
  cfg.strategy = s;
  return cfg;
}

Objective landau_objective(const PolyMap& f, LandauObjective which) {
  const int n = f.dim();
  if (which == LandauObjective::detroot) {
    return [&f, n](const ComplexVector& z) {
      return std::pow(std::abs(jacobian(f, z).determinant()), 1.0 / n);
    };
  }
  return [&f](const ComplexVector& z) { return sigma_min(jacobian(f, z)); };
}

Strategy landau_strategy(LandauObjective which) {
  // |det f'| is the modulus of a holomorphic function, so its maximum over a
  // closed ball sits on the boundary sphere; sigma_min has no such property.
  return which == LandauObjective::detroot ? Strategy::sphere : Strategy::ball;
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::formula: return "formula";
    case Mode::semi_adaptive: return "semi_adaptive";
    case Mode::adaptive: return "adaptive";
  }
  return "formula";
}

std::string to_string(Theorem t) { return t == Theorem::bochner ? "bochner" : "quasiregular"; }

std::string to_string(Rigor r) { return r == Rigor::closed_form ? "closed_form" : "sampled"; }

Mode mode_from_string(const std::string& s) {
  if (s == "formula") return Mode::formula;
  if (s == "semi" || s == "semi_adaptive") return Mode::semi_adaptive;
  if (s == "adaptive") return Mode::adaptive;
  throw InputError("unknown mode: " + s);
}

Theorem theorem_from_string(const std::string& s) {
  if (s == "bochner") return Theorem::bochner;
  if (s == "qr" || s == "quasiregular") return Theorem::quasiregular;
  throw InputError("unknown theorem: " + s);
}

Rigor rigor_from_string(const std::string& s) {
  if (s == "closed_form") return Rigor::closed_form;
  if (s == "sampled") return Rigor::sampled;
  throw InputError("unknown rigor label: " + s);
}

double formula_radius(int n, double K, double Kp) {
  if (n < 2) throw InputError("formula_radius: n must be >= 2");
  check_constants(K, Kp);
  const double k2 = K * K;
  return 1.0 / (4.0 * std::pow(k2 + Kp, n - 1) * (std::sqrt(4.0 * k2 + Kp) + std::sqrt(k2 + Kp)));
}

double qr_radius_formula(double alpha, double K, double Kp) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("qr_radius_formula: alpha must be > 0");
  check_constants(K, Kp);
  return alpha * alpha / (4.0 * (2.0 * K * alpha + Kp + alpha));
}

Normalized normalize_det(const PolyMap& f) {
  const int n = f.dim();
  const double d = std::abs(jacobian(f, ComplexVector::Zero(n)).determinant());
  if (!(d > 1e-12)) {
    throw DegenerateError("|det f'(0)| = " + std::to_string(d) + " is numerically zero");
  }
  const double c = std::pow(d, -1.0 / n);
  return {c == 1.0 ? f : scaled(f, c), c};
}

double max_det_root(const PolyMap& f, double r, const SampleConfig& cfg) {
  if (!(r >= 0.0 && r <= 1.0)) throw InputError("max_det_root: r must lie in [0, 1]");
  const auto obj = landau_objective(f, LandauObjective::detroot);
  if (r == 0.0) return obj(ComplexVector::Zero(f.dim()));
  const SampleSet samples(f.dim(), with_strategy(cfg, Strategy::sphere));
  return sampled_max(samples, r, obj).value;
}

double max_sigma_min(const PolyMap& f, double r, const SampleConfig& cfg) {
  if (!(r >= 0.0 && r <= 1.0)) throw InputError("max_sigma_min: r must lie in [0, 1]");
  const auto obj = landau_objective(f, LandauObjective::sigma_min);
  if (r == 0.0) return obj(ComplexVector::Zero(f.dim()));
  const SampleSet samples(f.dim(), with_strategy(cfg, Strategy::ball));
  return sampled_max(samples, r, obj).value;
}

LandauPoint find_landau_point(const PolyMap& f, LandauObjective which, double target,
                              const SampleConfig& cfg, double safety) {
  cfg.validate();
  if (!(target > 0.0)) throw InputError("find_landau_point: target must be positive");
  if (!(safety >= 1.0)) throw InputError("find_landau_point: safety factor must be >= 1");
  const int n = f.dim();
  const auto obj = landau_objective(f, which);
  const SampleSet samples(n, with_strategy(cfg, landau_strategy(which)));
  const ComplexVector origin = ComplexVector::Zero(n);
  const double at_origin = obj(origin);
  if (std::abs(at_origin - target) > 1e-6 * std::max(1.0, target)) {
    throw InputError("find_landau_point: objective at the origin does not match the target");
  }

  LandauPoint out;
  {
    const auto values = sample_values(samples, cfg.radius, obj);
    double spread = 0.0;
    for (double v : values) spread = std::max(spread, std::abs(v - at_origin));
    out.constant = spread <= 1e-12 * std::max(1.0, at_origin);
  }
  out.inflation = out.constant ? 1.0 : safety;

  auto max_at = [&](double rho) -> SampledMax {
    if (rho <= 0.0) return {at_origin, origin, 0, at_origin};
    return sampled_max(samples, rho, obj);
  };
  const double threshold = target * (1.0 - 1e-12);
  auto crosses = [&](double r) { return r * out.inflation * max_at(1.0 - r).value >= threshold; };

  // Obj(1 - r) is non-increasing in r, so r * Obj(1 - r') bounds psi(r) for
  // every r >= r'; grid points that bound rules out are skipped.
  int first = -1;
  for (int i = 1; i <= kLandauGrid;) {
    const double r = static_cast<double>(i) / kLandauGrid;
    const double m = out.inflation * max_at(1.0 - r).value;
    if (r * m >= threshold) {
      first = i;
      break;
    }
    const double skip_to = m > 0.0 ? threshold / m : 1.0;
    i = std::max(i + 1, static_cast<int>(std::floor(skip_to * kLandauGrid)));
  }
  if (first < 0) {
    throw InternalError("r * Obj(1 - r) never reached the target on [0, 1]; sampled maxima too low");
  }
  double lo = static_cast<double>(first - 1) / kLandauGrid;
  double hi = static_cast<double>(first) / kLandauGrid;
  while (hi - lo > kBisectTol) {
    const double mid = 0.5 * (lo + hi);
    (crosses(mid) ? hi : lo) = mid;
  }
  out.r0 = hi;
  const auto best = max_at(1.0 - out.r0);
  out.point = best.argmax;
  out.objective_at_point = best.value;
  return out;
}

PolyMap build_rescaled_F(const PolyMap& f, const ComplexVector& alpha, double r0, double f_scale) {
  if (alpha.size() != f.dim()) throw InputError("build_rescaled_F: dimension mismatch");
  if (!(r0 > 0.0 && r0 <= 1.0)) throw InputError("build_rescaled_F: r0 must lie in (0, 1]");
  if (alpha.norm() + 0.5 * r0 > 1.0 + 1e-9) {
    throw InputError("build_rescaled_F: alpha + (r0/2) B leaves the unit ball");
  }
  return affine_precompose(f, alpha, 0.5 * r0, evaluate(f, alpha), 2.0 * f_scale);
}

PolyMap build_rescaled_G(const PolyMap& f, const ComplexVector& w0, double r0) {
  if (w0.size() != f.dim()) throw InputError("build_rescaled_G: dimension mismatch");
  if (!(r0 > 0.0 && r0 <= 1.0)) throw InputError("build_rescaled_G: r0 must lie in (0, 1]");
  if (w0.norm() + 0.5 * r0 > 1.0 + 1e-9) {
    throw InputError("build_rescaled_G: w0 + (r0/2) B leaves the unit ball");
  }
  const ComplexMatrix a = jacobian(f, w0);
  if (sigma_min(a) <= 0.0) throw DomainError("build_rescaled_G: f'(w0) is singular");
  // Inner step r0/2 times outer factor 2/r0 gives G'(0) = A^{-1} A = I.
  return matrix_precompose(f, a.inverse(), w0, 0.5 * r0, 2.0 / r0);
}

BochnerTrace trace_bochner(const PolyMap& f, double Kp, const SampleConfig& cfg, double safety) {
  BochnerTrace t;
  t.normalized = normalize_det(f);
  const double c = t.normalized.scale;
  t.Kp_normalized = c * c * Kp;
  t.landau = find_landau_point(t.normalized.map, LandauObjective::detroot, 1.0, cfg, safety);
  // |det F'(0)| = (f_scale r0 M)^n = 1.
  t.f_scale = 1.0 / (t.landau.r0 * t.landau.objective_at_point);
  t.F = build_rescaled_F(t.normalized.map, t.landau.point, t.landau.r0, t.f_scale);
  const double s = sigma_min(jacobian(t.F, ComplexVector::Zero(f.dim())));
  t.lambda = s * s;
  return t;
}

double univalence_radius(int n, const Objective& excess, const SampleConfig& cfg, int grid) {
  if (grid < 1) throw InputError("univalence_radius: grid must be >= 1");
  const SampleSet samples(n, with_strategy(cfg, Strategy::sphere));
  auto holds = [&](double rho) { return sampled_max(samples, rho, excess).value <= 0.0; };
  // The excess is a plurisubharmonic quantity minus a constant, so its maximum
  // over |zeta| <= rho grows with rho: holding on the unit sphere settles it.
  if (holds(1.0)) return 1.0;
  for (int i = 1; i <= grid; ++i) {
    const double rho = static_cast<double>(i) / grid;
    if (holds(rho)) continue;
    double lo = static_cast<double>(i - 1) / grid;
    double hi = rho;
    while (hi - lo > kBisectTol) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? lo : hi) = mid;
    }
    return lo;
  }
  return 1.0;
}

namespace {

void verify_bochner_class(const PolyMap& f, double K, double Kp, const SampleConfig& cfg) {
  const auto est = estimate_kprime_bochner(f, K, with_strategy(cfg, Strategy::ball));
  if (est.value > Kp + 1e-9 * std::max(1.0, Kp)) {
    throw ClassViolation("sampled K' = " + std::to_string(est.value) + " exceeds the supplied K' at K");
  }
}

void verify_qr_class(const PolyMap& f, double K, double Kp, const SampleConfig& cfg) {
  const auto est = estimate_kprime_quasiregular(f, K, with_strategy(cfg, Strategy::ball));
  if (est.value > Kp + 1e-9 * std::max(1.0, Kp)) {
    throw ClassViolation("sampled K' = " + std::to_string(est.value) + " exceeds the supplied K' at K");
  }
}

CertifiedBall bochner_ball(const PolyMap& f, const BochnerTrace& t, double K, double Kp, Mode mode,
                           const SampleConfig& cfg, const CertifyOptions& opts) {
  const int n = f.dim();
  const double kp = t.Kp_normalized;
  const double growth = std::sqrt(4.0 * K * K + kp) + std::sqrt(K * K + kp);

  double lambda_used = t.lambda;
  double rho = 0.0;
  switch (mode) {
    case Mode::formula:
      // Worst case allowed by the Yu-Gu bound with ||F'(0)||^2 <= K^2 + K'.
      lambda_used = std::pow(K * K + kp, -(n - 1.0));
      rho = std::sqrt(lambda_used) / growth;
      break;
    case Mode::semi_adaptive:
      rho = std::sqrt(t.lambda) / growth;
      break;
    case Mode::adaptive: {
      const ComplexMatrix f0 = jacobian(t.F, ComplexVector::Zero(n));
      const double lambda = t.lambda;
      const PolyMap& F = t.F;
      rho = univalence_radius(
          n, [&](const ComplexVector& z) { return (jacobian(F, z) - f0).squaredNorm() - lambda; }, cfg,
          opts.rho_grid);
      break;
    }
  }
  if (!(rho > 0.0)) throw InternalError("certify_bochner: empty univalence radius");

  CertifiedBall b;
  b.theorem = Theorem::bochner;
  b.mode = mode;
  b.rigor = t.landau.constant ? Rigor::closed_form : Rigor::sampled;
  b.center = evaluate(f, t.landau.point);
  // F carries a ball of radius sqrt(lambda) rho / 2; F = 2 f_scale (g(.) - g(alpha)) and g = c f.
  b.radius = std::sqrt(lambda_used) * rho / 2.0 / (2.0 * t.f_scale) / t.normalized.scale;
  auto& w = b.witness;
  w.r0 = t.landau.r0;
  w.landau_point = t.landau.point;
  w.m_at_landau = t.landau.objective_at_point;
  w.lambda = t.lambda;
  w.rho0 = rho;
  w.norm_scale = t.normalized.scale;
  w.f_scale = t.f_scale;
  w.domain_radius = 0.5 * t.landau.r0 * rho;
  w.K = K;
  w.Kp = Kp;
  return b;
}

struct QuasiregularTrace {
  double alpha = 0.0;
  LandauPoint landau;
  PolyMap G{1};
  double sigma_at_landau = 0.0;
};

QuasiregularTrace trace_quasiregular(const PolyMap& f, const SampleConfig& cfg, double safety) {
  QuasiregularTrace t;
  t.alpha = sigma_min(jacobian(f, ComplexVector::Zero(f.dim())));
  if (!(t.alpha > 1e-12)) throw DegenerateError("lambda_f(0) is numerically zero");
  t.landau = find_landau_point(f, LandauObjective::sigma_min, t.alpha, cfg, safety);
  t.G = build_rescaled_G(f, t.landau.point, t.landau.r0);
  t.sigma_at_landau = sigma_min(jacobian(f, t.landau.point));
  return t;
}

CertifiedBall quasiregular_ball(const PolyMap& f, const QuasiregularTrace& t, double K, double Kp,
                                Mode mode, const SampleConfig& cfg, const CertifyOptions& opts) {
  const int n = f.dim();
  const double alpha = t.alpha;
  // Semi-adaptive has nothing to adapt here: lambda of G'(0) = I is exactly 1.
  double rho = alpha / (2.0 * K * alpha + Kp + alpha);
  if (mode == Mode::adaptive) {
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const PolyMap& G = t.G;
    rho = univalence_radius(
        n, [&](const ComplexVector& z) { return operator_norm(jacobian(G, z) - eye) - 1.0; }, cfg,
        opts.rho_grid);
  }
  if (!(rho > 0.0)) throw InternalError("certify_quasiregular: empty univalence radius");

  CertifiedBall b;
  b.theorem = Theorem::quasiregular;
  b.mode = mode;
  b.rigor = t.landau.constant ? Rigor::closed_form : Rigor::sampled;
  b.center = evaluate(f, t.landau.point);
  // G maps B(0, rho) onto a set containing B(0, rho / 2), and
  // f(w0 + r0 zeta / 2) = f(w0) + (r0 / 2) A G(zeta).
  b.radius = 0.5 * t.landau.r0 * t.sigma_at_landau * 0.5 * rho;
  auto& w = b.witness;
  w.r0 = t.landau.r0;
  w.landau_point = t.landau.point;
  w.m_at_landau = t.landau.objective_at_point;
  w.lambda = 1.0;
  w.rho0 = rho;
  w.norm_scale = 1.0;
  w.f_scale = alpha / (t.landau.r0 * t.sigma_at_landau);
  w.domain_radius = 0.5 * t.landau.r0 * rho;
  w.K = K;
  w.Kp = Kp;
  return b;
}

}  // namespace

CertifiedBall certify_bochner(const PolyMap& f, double K, double Kp, Mode mode,
                              const SampleConfig& cfg, const CertifyOptions& opts) {
  return certify_bochner_modes(f, K, Kp, {mode}, cfg, opts).front();
}

std::vector<CertifiedBall> certify_bochner_modes(const PolyMap& f, double K, double Kp,
                                                 const std::vector<Mode>& modes,
                                                 const SampleConfig& cfg, const CertifyOptions& opts) {
  if (f.dim() < 2) throw InputError("certify_bochner: n must be >= 2");
  check_constants(K, Kp);
  cfg.validate();
  if (opts.verify_class) verify_bochner_class(f, K, Kp, cfg);
  const auto t = trace_bochner(f, Kp, cfg, opts.safety);
  std::vector<CertifiedBall> out;
  for (Mode m : modes) out.push_back(bochner_ball(f, t, K, Kp, m, cfg, opts));
  return out;
}

CertifiedBall certify_quasiregular(const PolyMap& f, double K, double Kp, Mode mode,
                                   const SampleConfig& cfg, const CertifyOptions& opts) {
  return certify_quasiregular_modes(f, K, Kp, {mode}, cfg, opts).front();
}

std::vector<CertifiedBall> certify_quasiregular_modes(const PolyMap& f, double K, double Kp,
                                                      const std::vector<Mode>& modes,
                                                      const SampleConfig& cfg,
                                                      const CertifyOptions& opts) {
  check_constants(K, Kp);
  cfg.validate();
  if (opts.verify_class) verify_qr_class(f, K, Kp, cfg);
  const auto t = trace_quasiregular(f, cfg, opts.safety);
  std::vector<CertifiedBall> out;
  for (Mode m : modes) out.push_back(quasiregular_ball(f, t, K, Kp, m, cfg, opts));
  return out;
}

nlohmann::json to_json(const CertifiedBall& b) {
  const auto& w = b.witness;
  return {
      {"theorem", to_string(b.theorem)},
      {"mode", to_string(b.mode)},
      {"rigor", to_string(b.rigor)},
      {"center", to_json(b.center)},
      {"radius", b.radius},
      {"witness",
       {{"r0", w.r0},
        {"landau_point", to_json(w.landau_point)},
        {"m_at_landau", w.m_at_landau},
        {"lambda", w.lambda},
        {"rho0", w.rho0},
        {"norm_scale", w.norm_scale},
        {"f_scale", w.f_scale},
        {"domain_radius", w.domain_radius},
        {"K", w.K},
        {"Kp", w.Kp}}},
  };
}

CertifiedBall certified_ball_from_json(const nlohmann::json& j) {
  try {
    CertifiedBall b;
    b.theorem = theorem_from_string(j.at("theorem").get<std::string>());
    b.mode = mode_from_string(j.at("mode").get<std::string>());
    b.rigor = rigor_from_string(j.at("rigor").get<std::string>());
    b.center = complex_vector_from_json(j.at("center"));
    b.radius = j.at("radius").get<double>();
    const auto& wj = j.at("witness");
    auto& w = b.witness;
    w.r0 = wj.at("r0").get<double>();
    w.landau_point = complex_vector_from_json(wj.at("landau_point"), static_cast<int>(b.center.size()));
    w.m_at_landau = wj.value("m_at_landau", 1.0);
    w.lambda = wj.at("lambda").get<double>();
    w.rho0 = wj.at("rho0").get<double>();
    w.norm_scale = wj.at("norm_scale").get<double>();
    w.f_scale = wj.value("f_scale", 1.0);
    w.domain_radius = wj.value("domain_radius", 0.5 * w.r0 * w.rho0);
    w.K = wj.value("K", 1.0);
    w.Kp = wj.value("Kp", 0.0);
    if (!(b.radius > 0.0) || !(w.r0 > 0.0 && w.r0 <= 1.0) || !(w.rho0 > 0.0 && w.rho0 <= 1.0)) {
      throw InputError("certificate fields out of range");
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed certificate JSON: ") + e.what());
  }
}

}  // namespace blochcert
