#include <set>
#include <sstream>

#include "doctest.h"

#include "blochcert/corpus.hpp"

using namespace blochcert;

TEST_CASE("bench corpus contents") {
  const auto corpus = bench_corpus(42);
  CHECK(corpus.size() >= 25);
  std::set<std::string> ids;
  for (const auto& e : corpus) ids.insert(e.id);
  CHECK(ids.size() == corpus.size());
  CHECK(ids.count("identity2") == 1);
  CHECK(ids.count("example_1_20") == 1);

  const auto again = bench_corpus(42);
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(corpus[i].map.terms() == again[i].map.terms());
  const auto other = bench_corpus(43);
  bool differs = false;
  for (std::size_t i = 0; i < corpus.size(); ++i) differs |= corpus[i].map.terms() != other[i].map.terms();
  CHECK(differs);
}

TEST_CASE("class constants used by the bench") {
  BenchConfig cfg;
  cfg.classify_samples = 512;
  for (const auto& e : bench_corpus(42)) {
    const auto c = bench_class(e, cfg);
    CHECK(c.bochner_K >= 1.0);
    CHECK(c.bochner_Kp >= 0.0);
    if (e.id == "example_1_20") {
      CHECK(c.bochner_K == 1.0);
      CHECK(c.bochner_Kp == 20.0);
    }
  }
}

TEST_CASE("bench rows and CSV") {
  BenchConfig cfg;
  cfg.certify_samples = 64;
  cfg.oracle_samples = 32;
  const auto corpus = bench_corpus(42);
  const auto rows = run_bench_entry(corpus.front(), cfg);
  CHECK(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.oracle.valid());
    CHECK(r.ratio() >= 1.0);
  }
  std::ostringstream out;
  write_bench_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "map_id,n,theorem,K,Kp,mode,certified_radius,empirical_radius,ratio");
  int count = 0;
  while (std::getline(in, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  CHECK(count == 6);
}
