#pragma once

// Named verification suites and their reports.
//
// Each suite sweeps a desk-scale family of cases, records every failed
// assertion with a replayable counterexample (flags in the text format of
// format_flag) and summarises the sweep in a JSON report. Reports are
// deterministic for a fixed config: random choices come from the seed, worker
// output is merged in a fixed order and timing is left out unless asked for.

#include "richkit/interpolate.hpp"
#include "richkit/locus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace richkit {

struct SuiteConfig {
  std::string suite;
  /// 0 selects the suite default.
  int d = 0;
  /// Empty selects the suite default.
  std::vector<int> q_list;
  Budget budget;
  std::uint64_t seed = 1;
  int threads = 1;
  bool timing = false;
};

struct Counterexample {
  std::string assertion;
  std::string detail;
  std::vector<Flag> flags;
};

struct PolynomialRecord {
  std::string locus;
  std::vector<std::uint64_t> samples;
  CountPolynomial poly;
};

struct SuiteReport {
  /// At most this many counterexamples are stored; the rest are only counted.
  static constexpr std::size_t kMaxCounterexamples = 16;

  std::string suite;
  int d = 0;
  std::vector<int> qs;
  std::string spec;
  bool passed = true;
  std::uint64_t failures = 0;
  std::vector<Counterexample> counterexamples;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::vector<PolynomialRecord> polynomials;
  std::optional<double> elapsed_ms;

  void fail(std::string assertion, std::string detail, std::vector<Flag> flags = {});
  /// Adds n to the named counter, creating it in insertion order.
  void count(const std::string& key, std::uint64_t n = 1);
  std::uint64_t counter(const std::string& key) const;
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite or bad parameters and
/// BudgetExceeded when an enumeration is over the cap.
SuiteReport run_suite(const SuiteConfig& cfg);

/// Pretty-printed, key order fixed, trailing newline.
std::string report_json(const SuiteReport& r);
/// One row per count polynomial: locus,degree,anomaly,coefficients (low to high, ';'-separated).
std::string report_csv(const SuiteReport& r);

}  // namespace richkit
