#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "blochcert/holomap.hpp"
#include "blochcert/sampling.hpp"

namespace blochcert {

enum class Mode { formula, semi_adaptive, adaptive };
enum class Theorem { bochner, quasiregular };
enum class Rigor { closed_form, sampled };

std::string to_string(Mode m);
std::string to_string(Theorem t);
std::string to_string(Rigor r);
Mode mode_from_string(const std::string& s);  // accepts "semi" for semi_adaptive
Theorem theorem_from_string(const std::string& s);  // accepts "qr" for quasiregular
Rigor rigor_from_string(const std::string& s);

/// Everything needed to replay a certificate.
///
/// Both rescalings have the form zeta -> z = landau_point + (r0 / 2) zeta, so the
/// certified preimage is the z-ball of radius domain_radius = r0 * rho0 / 2
/// around landau_point.
struct CertificationWitness {
  double r0 = 1.0;
  ComplexVector landau_point;
  double m_at_landau = 1.0;  // M(1 - r0) or N(1 - r0) at the landau point
  double lambda = 1.0;       // smallest eigenvalue of F'(0)^* F'(0); 1 on the G-path
  double rho0 = 1.0;         // zeta-space univalence radius used by this mode
  double norm_scale = 1.0;   // c with |det (c f)'(0)| = 1 (Bochner path)
  double f_scale = 1.0;      // extra output factor of F/G; 1 in exact arithmetic
  double domain_radius = 0.0;
  double K = 1.0;
  double Kp = 0.0;  // as supplied by the caller, in the original map's scale
};

struct CertifiedBall {
  Theorem theorem = Theorem::bochner;
  Mode mode = Mode::formula;
  Rigor rigor = Rigor::sampled;
  ComplexVector center;
  double radius = 0.0;
  CertificationWitness witness;
};

nlohmann::json to_json(const CertifiedBall& b);
CertifiedBall certified_ball_from_json(const nlohmann::json& j);

struct CertifyOptions {
  double safety = 1.05;       // inflation of sampled M / N before root finding
  bool verify_class = false;  // check (K, K') with the classifier first
  int rho_grid = 200;         // grid resolution of the adaptive rho0 scan
};

// ---- closed forms -------------------------------------------------------

/// 1 / (4 (K^2+K')^{n-1} (sqrt(4K^2+K') + sqrt(K^2+K'))).
double formula_radius(int n, double K, double Kp);

/// alpha^2 / (4 (2 K alpha + K' + alpha)).
double qr_radius_formula(double alpha, double K, double Kp);

// ---- pipeline pieces ----------------------------------------------------

struct Normalized {
  PolyMap map{1};
  double scale = 1.0;
};

/// g = c f with c = |det f'(0)|^{-1/n}; DegenerateError when |det f'(0)| <= 1e-12.
Normalized normalize_det(const PolyMap& f);

/// max of |det f'|^{1/n} over the sphere |z| = r (exact at r = 0).
double max_det_root(const PolyMap& f, double r, const SampleConfig& cfg);

/// max of the smallest singular value of f' over the ball |z| <= r.
double max_sigma_min(const PolyMap& f, double r, const SampleConfig& cfg);

enum class LandauObjective { detroot, sigma_min };

struct LandauPoint {
  double r0 = 1.0;
  ComplexVector point;
  double objective_at_point = 0.0;
  double inflation = 1.0;  // factor actually applied to the sampled maxima
  bool constant = false;   // objective showed zero variance on the ball
};

/// First crossing r0 of r * safety * Obj(1 - r) = target (grid of 1e3, then
/// bisection to 1e-9) and the point of the radius-(1 - r0) sphere/ball that
/// attains the sampled maximum. Constant objectives are not inflated.
LandauPoint find_landau_point(const PolyMap& f, LandauObjective objective, double target,
                              const SampleConfig& cfg, double safety = 1.0);

/// F(zeta) = 2 f_scale (f(alpha + r0 zeta / 2) - f(alpha)).
PolyMap build_rescaled_F(const PolyMap& f, const ComplexVector& alpha, double r0,
                         double f_scale = 1.0);

/// G(zeta) = (2 / r0) A^{-1} (f(w0 + r0 zeta / 2) - f(w0)), A = f'(w0), so G'(0) = I.
PolyMap build_rescaled_G(const PolyMap& f, const ComplexVector& w0, double r0);

/// Intermediate objects of the Bochner pipeline, exposed for inspection.
struct BochnerTrace {
  Normalized normalized;
  double Kp_normalized = 0.0;  // K' transported to the normalized map: c^2 K'
  LandauPoint landau;
  double f_scale = 1.0;
  PolyMap F{1};
  double lambda = 0.0;
};

BochnerTrace trace_bochner(const PolyMap& f, double Kp, const SampleConfig& cfg, double safety);

/// Largest rho <= 1 such that the sampled max of excess(zeta) over |zeta| = rho
/// stays <= 0 (grid scan to the first failure, then bisection).
double univalence_radius(int n, const Objective& excess, const SampleConfig& cfg, int grid);

// ---- certificates -------------------------------------------------------

CertifiedBall certify_bochner(const PolyMap& f, double K, double Kp, Mode mode,
                              const SampleConfig& cfg, const CertifyOptions& opts = {});

CertifiedBall certify_quasiregular(const PolyMap& f, double K, double Kp, Mode mode,
                                   const SampleConfig& cfg, const CertifyOptions& opts = {});

/// Several modes from one shared Landau search.
std::vector<CertifiedBall> certify_bochner_modes(const PolyMap& f, double K, double Kp,
                                                 const std::vector<Mode>& modes,
                                                 const SampleConfig& cfg,
                                                 const CertifyOptions& opts = {});
std::vector<CertifiedBall> certify_quasiregular_modes(const PolyMap& f, double K, double Kp,
                                                      const std::vector<Mode>& modes,
                                                      const SampleConfig& cfg,
                                                      const CertifyOptions& opts = {});

}  // namespace blochcert
