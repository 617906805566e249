#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "blochcert/certifier.hpp"
#include "blochcert/classifier.hpp"
#include "blochcert/corpus.hpp"
#include "blochcert/errors.hpp"
#include "blochcert/oracle.hpp"
#include "blochcert/polymap_json.hpp"

#ifndef BLOCHCERT_VERSION
#define BLOCHCERT_VERSION "dev"
#endif

using namespace blochcert;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kMalformed = 2, kDegenerate = 3, kInvalid = 4 };

struct RunConfig {
  std::string command;
  std::string map_path;
  std::string cert_path;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  double radius = 1.0 - 1e-6;
  double K = 1.0;
  double Kp = 0.0;
  std::string mode = "formula";
  std::string theorem = "bochner";
  double safety = 1.05;
  bool verify_class = false;
  std::string out;

  void validate() const {
    if (samples < 10) throw InputError("--samples must be >= 10");
    if (!(safety >= 1.0)) throw InputError("--safety must be >= 1");
  }

  SampleConfig sample_config() const {
    SampleConfig c;
    c.count = samples;
    c.seed = seed;
    c.radius = radius;
    c.validate();
    return c;
  }

  json to_json() const {
    json j{{"command", command}, {"samples", samples}, {"seed", seed}};
    if (!map_path.empty()) j["map_path"] = map_path;
    if (command == "classify") {
      j["radius"] = radius;
      j["K"] = K;
    }
    if (command == "certify") {
      j["K"] = K;
      j["Kp"] = Kp;
      j["mode"] = to_string(mode_from_string(mode));
      j["theorem"] = to_string(theorem_from_string(theorem));
      j["safety"] = safety;
      j["verify_class"] = verify_class;
    }
    if (command == "oracle") j["cert_path"] = cert_path;
    if (!out.empty()) j["out"] = out;
    return j;
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << text;
}

void emit_report(const RunConfig& cfg, const json& result) {
  const json report{{"tool", "blochcert"},
                    {"version", BLOCHCERT_VERSION},
                    {"config", cfg.to_json()},
                    {"result", result}};
  emit(cfg, report.dump(2) + "\n");
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

int run_classify(const RunConfig& cfg) {
  const PolyMap f = load_polymap(cfg.map_path);
  emit_report(cfg, to_json(classify(f, cfg.K, cfg.sample_config())));
  return kOk;
}

int run_certify(const RunConfig& cfg) {
  const PolyMap f = load_polymap(cfg.map_path);
  CertifyOptions opts;
  opts.safety = cfg.safety;
  opts.verify_class = cfg.verify_class;
  const Mode mode = mode_from_string(cfg.mode);
  const CertifiedBall ball = theorem_from_string(cfg.theorem) == Theorem::bochner
                                 ? certify_bochner(f, cfg.K, cfg.Kp, mode, cfg.sample_config(), opts)
                                 : certify_quasiregular(f, cfg.K, cfg.Kp, mode, cfg.sample_config(), opts);
  emit_report(cfg, to_json(ball));
  return kOk;
}

int run_oracle(const RunConfig& cfg) {
  const PolyMap f = load_polymap(cfg.map_path);
  const json doc = read_json(cfg.cert_path);
  // a full certify report or a bare certificate
  const CertifiedBall ball = certified_ball_from_json(doc.contains("result") ? doc.at("result") : doc);
  if (ball.center.size() != f.dim() || ball.witness.landau_point.size() != f.dim()) {
    throw InputError("certificate dimension does not match the map");
  }
  const OracleReport r = validate_certificate(f, ball, cfg.sample_config());
  json result = to_json(r);
  result["valid"] = r.valid();
  emit_report(cfg, result);
  return r.valid() ? kOk : kInvalid;
}

int run_bench(const RunConfig& cfg) {
  BenchConfig bc;
  bc.seed = cfg.seed;
  const auto rows = run_bench(bc);
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  emit(cfg, csv.str());
  for (const auto& r : rows) {
    if (!r.oracle.valid()) return kInvalid;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Certified schlicht balls for polynomial holomorphic maps"};
  app.set_version_flag("--version", std::string("blochcert ") + BLOCHCERT_VERSION);
  app.require_subcommand(1);

  auto* classify_cmd = app.add_subcommand("classify", "estimate Bochner and quasiregular class constants");
  classify_cmd->add_option("map", cfg.map_path, "map JSON")->required();
  classify_cmd->add_option("--samples", cfg.samples)->capture_default_str();
  classify_cmd->add_option("--seed", cfg.seed)->capture_default_str();
  classify_cmd->add_option("--radius", cfg.radius)->capture_default_str();
  classify_cmd->add_option("--K", cfg.K, "K at which K' is estimated")->capture_default_str();
  classify_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  auto* certify_cmd = app.add_subcommand("certify", "certify a schlicht ball");
  certify_cmd->add_option("map", cfg.map_path, "map JSON")->required();
  certify_cmd->add_option("--K", cfg.K)->required();
  certify_cmd->add_option("--Kp", cfg.Kp)->required();
  certify_cmd->add_option("--mode", cfg.mode)
      ->check(CLI::IsMember({"formula", "semi", "semi_adaptive", "adaptive"}))
      ->capture_default_str();
  certify_cmd->add_option("--theorem", cfg.theorem)
      ->check(CLI::IsMember({"bochner", "qr", "quasiregular"}))
      ->capture_default_str();
  certify_cmd->add_option("--safety", cfg.safety)->capture_default_str();
  certify_cmd->add_flag("--verify-class", cfg.verify_class, "check (K, K') with the classifier first");
  certify_cmd->add_option("--samples", cfg.samples)->capture_default_str();
  certify_cmd->add_option("--seed", cfg.seed)->capture_default_str();
  certify_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  std::size_t oracle_samples = 1024;
  auto* oracle_cmd = app.add_subcommand("oracle", "validate a certificate by Newton inversion");
  oracle_cmd->add_option("map", cfg.map_path, "map JSON")->required();
  oracle_cmd->add_option("cert", cfg.cert_path, "certificate JSON")->required();
  oracle_cmd->add_option("--samples", oracle_samples)->capture_default_str();
  oracle_cmd->add_option("--seed", cfg.seed)->capture_default_str();
  oracle_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "run the built-in corpus and write CSV");
  bench_cmd->add_option("--out", cfg.out, "CSV file (default stdout)");
  bench_cmd->add_option("--seed", cfg.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*oracle_cmd) cfg.samples = oracle_samples;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.validate();
    if (*classify_cmd) return run_classify(cfg);
    if (*certify_cmd) return run_certify(cfg);
    if (*oracle_cmd) return run_oracle(cfg);
    return run_bench(cfg);
  } catch (const DegenerateError& e) {
    std::cerr << "degenerate map: " << e.what() << "\n";
    return kDegenerate;
  } catch (const ClassViolation& e) {
    std::cerr << "class check failed: " << e.what() << "\n";
    return kMalformed;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
