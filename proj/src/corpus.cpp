#include "blochcert/corpus.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <tuple>

#include "blochcert/classifier.hpp"

namespace blochcert {

namespace {

// Margin on sampled class constants of non-linear maps; sampled suprema
// undershoot the true ones.
constexpr double kClassMargin = 1.01;

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SampleConfig classify_cfg(const BenchConfig& cfg) {
  SampleConfig s;
  s.count = cfg.classify_samples;
  s.seed = cfg.seed;
  s.strategy = Strategy::ball;
  return s;
}

}  // namespace

PolyMap random_quadratic_perturbation(int n, double size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PolyMap f = PolyMap::identity(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      MultiIndex e(n, 0);
      ++e[a];
      ++e[b];
      ComplexVector c(n);
      for (int i = 0; i < n; ++i) {
        c[i] = size * Complex(2.0 * unit_double(rng) - 1.0, 2.0 * unit_double(rng) - 1.0);
      }
      f.add_term(e, c);
    }
  }
  return f;
}

std::vector<CorpusEntry> bench_corpus(std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  out.push_back({"identity2", PolyMap::identity(2), std::nullopt});
  out.push_back({"identity3", PolyMap::identity(3), std::nullopt});
  for (double c : {0.5, 2.0, 3.0}) {
    std::ostringstream id;
    id << "scaled_identity_" << c;
    out.push_back({id.str(), scaled(PolyMap::identity(2), c), std::nullopt});
  }
  for (int m = 1; m <= 8; ++m) out.push_back({"wu_" + std::to_string(m), wu_map(m), std::nullopt});
  out.push_back({"example_1_20", example_map(), std::make_pair(1.0, 20.0)});
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 20; ++k) {
    const int n = k < 14 ? 2 : 3;
    const double size = 0.05 + 0.1 * unit_double(rng);
    out.push_back({"perturbed_" + std::to_string(k), random_quadratic_perturbation(n, size, rng()),
                   std::nullopt});
  }
  return out;
}

BenchClass bench_class(const CorpusEntry& e, const BenchConfig& cfg) {
  const auto scfg = classify_cfg(cfg);
  const double margin = e.map.degree() > 1 ? kClassMargin : 1.0;
  BenchClass c;
  if (e.bochner_class) {
    std::tie(c.bochner_K, c.bochner_Kp) = *e.bochner_class;
  } else {
    const auto k = estimate_bochner_k(e.map, scfg);
    if (k.infinite) {
      c.bochner_K = 1.0;
      c.bochner_Kp = margin * estimate_kprime_bochner(e.map, 1.0, scfg).value;
    } else {
      c.bochner_K = margin * std::max(1.0, k.value);
    }
  }
  c.qr_Kp = margin * estimate_kprime_quasiregular(e.map, 1.0, scfg).value;
  return c;
}

std::vector<BenchRow> run_bench_entry(const CorpusEntry& e, const BenchConfig& cfg) {
  const BenchClass cls = bench_class(e, cfg);
  SampleConfig cert_cfg;
  cert_cfg.count = cfg.certify_samples;
  cert_cfg.seed = cfg.seed;
  SampleConfig oracle_cfg;
  oracle_cfg.count = cfg.oracle_samples;
  oracle_cfg.seed = cfg.seed;
  CertifyOptions opts;
  opts.safety = cfg.safety;
  const std::vector<Mode> modes = {Mode::formula, Mode::semi_adaptive, Mode::adaptive};

  std::vector<BenchRow> rows;
  auto add = [&](Theorem th, double K, double Kp, const std::vector<CertifiedBall>& balls) {
    for (const auto& b : balls) {
      BenchRow r;
      r.id = e.id;
      r.n = e.map.dim();
      r.theorem = th;
      r.K = K;
      r.Kp = Kp;
      r.mode = b.mode;
      r.ball = b;
      r.oracle = validate_certificate(e.map, b, oracle_cfg);
      rows.push_back(std::move(r));
    }
  };
  add(Theorem::bochner, cls.bochner_K, cls.bochner_Kp,
      certify_bochner_modes(e.map, cls.bochner_K, cls.bochner_Kp, modes, cert_cfg, opts));
  if (cfg.include_quasiregular) {
    add(Theorem::quasiregular, cls.qr_K, cls.qr_Kp,
        certify_quasiregular_modes(e.map, cls.qr_K, cls.qr_Kp, modes, cert_cfg, opts));
  }
  return rows;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  for (const auto& e : bench_corpus(cfg.seed)) {
    auto part = run_bench_entry(e, cfg);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "map_id,n,theorem,K,Kp,mode,certified_radius,empirical_radius,ratio\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.id << ',' << r.n << ',' << to_string(r.theorem) << ',' << r.K << ',' << r.Kp << ','
        << to_string(r.mode) << ',' << r.ball.radius << ',' << r.oracle.empirical_radius << ','
        << r.ratio() << '\n';
  }
}

}  // namespace blochcert
