#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "blochcert/certifier.hpp"
#include "blochcert/holomap.hpp"
#include "blochcert/oracle.hpp"

namespace blochcert {

struct CorpusEntry {
  std::string id;
  PolyMap map;
  /// Known Bochner (K, K') for fixtures that come with one; estimated otherwise.
  std::optional<std::pair<double, double>> bochner_class;
};

/// identity (n = 2, 3), scaled identities, Wu maps m = 1..8, the (1, 20)
/// example map, and 20 seeded degree-2 perturbations of the identity.
std::vector<CorpusEntry> bench_corpus(std::uint64_t seed);

/// Identity plus small seeded quadratic terms in every component.
PolyMap random_quadratic_perturbation(int n, double size, std::uint64_t seed);

struct BenchConfig {
  std::uint64_t seed = 42;
  std::size_t classify_samples = 2048;
  std::size_t certify_samples = 256;
  std::size_t oracle_samples = 64;
  double safety = 1.05;
  bool include_quasiregular = true;
};

struct BenchRow {
  std::string id;
  int n = 0;
  Theorem theorem = Theorem::bochner;
  double K = 1.0;
  double Kp = 0.0;
  Mode mode = Mode::formula;
  CertifiedBall ball;
  OracleReport oracle;

  double ratio() const { return oracle.empirical_radius / ball.radius; }
};

/// Class constants used for an entry: (K, K') for the Bochner path and the
/// quasiregular path respectively.
struct BenchClass {
  double bochner_K = 1.0;
  double bochner_Kp = 0.0;
  double qr_K = 1.0;
  double qr_Kp = 0.0;
};

BenchClass bench_class(const CorpusEntry& e, const BenchConfig& cfg);

std::vector<BenchRow> run_bench(const BenchConfig& cfg);
std::vector<BenchRow> run_bench_entry(const CorpusEntry& e, const BenchConfig& cfg);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace blochcert
