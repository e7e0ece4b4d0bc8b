#include "richkit/suites.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>

using namespace richkit;
using nlohmann::json;

namespace {

SuiteConfig config(const std::string& suite, int d = 0, std::vector<int> qs = {}) {
  SuiteConfig c;
  c.suite = suite;
  c.d = d;
  c.q_list = std::move(qs);
  return c;
}

}  // namespace

TEST(Suites, RegistryHasEveryName) {
  const auto& names = suite_names();
  for (const char* n : {"demazure-axioms", "invfix", "m-dim", "image-theorem", "codimension", "smooth-locus",
                        "multi-product", "ess-reduction", "schubert-counts", "singular-locus", "richardson-id"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
}

TEST(Suites, RejectsBadConfigs) {
  EXPECT_THROW(run_suite(config("nope")), std::invalid_argument);
  EXPECT_THROW(run_suite(config("invfix", 0, {4})), std::invalid_argument);
  EXPECT_THROW(run_suite(config("invfix", 0, {3, 3})), std::invalid_argument);
  EXPECT_THROW(run_suite(config("image-theorem", 5)), std::invalid_argument);
  EXPECT_THROW(run_suite(config("demazure-axioms", 3, {2})), std::invalid_argument);
  // Two samples cannot pin down a cubic.
  EXPECT_THROW(run_suite(config("codimension", 3, {2, 3})), std::invalid_argument);
  SuiteConfig c = config("codimension", 4);
  EXPECT_THROW(run_suite(c), BudgetExceeded);
  c = config("invfix");
  c.threads = 0;
  EXPECT_THROW(run_suite(c), std::invalid_argument);
}

TEST(Suites, SmallSweepsPass) {
  const SuiteReport image = run_suite(config("image-theorem", 3, {2}));
  EXPECT_TRUE(image.passed);
  EXPECT_EQ(image.counter("sigma_tau_pairs"), 36u);
  const SuiteReport dem = run_suite(config("demazure-axioms", 4));
  EXPECT_TRUE(dem.passed);
  EXPECT_EQ(dem.counter("triples"), 13824u);
  const SuiteReport m = run_suite(config("m-dim", 4, {2}));
  EXPECT_TRUE(m.passed);
  EXPECT_EQ(m.counter("permutations"), 24u);
}

TEST(Suites, CodimensionPolynomialsInDimensionThree) {
  const SuiteReport r = run_suite(config("codimension", 3));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.counter("nonempty_pairs") + r.counter("empty_pairs"), 36u);
  ASSERT_EQ(r.polynomials.size(), r.counter("nonempty_pairs"));
  for (const auto& p : r.polynomials) {
    EXPECT_FALSE(p.poly.anomaly) << p.locus;
    for (std::size_t k = 0; k < p.samples.size(); ++k)
      EXPECT_EQ(static_cast<std::uint64_t>(p.poly(std::vector<int>{2, 3, 5, 7, 11, 13}[k])), p.samples[k]);
  }
  const auto whole = std::find_if(r.polynomials.begin(), r.polynomials.end(),
                                  [](const PolynomialRecord& p) { return p.locus == "R sigma=2,1,0 tau=2,1,0"; });
  ASSERT_NE(whole, r.polynomials.end());
  EXPECT_EQ(whole->poly.coefficients, (std::vector<std::int64_t>{1, 2, 2, 1}));
}

TEST(Report, JsonLayout) {
  SuiteReport r;
  r.suite = "invfix";
  r.d = 2;
  r.qs = {2};
  r.spec = "invfix d=2 q=2 seed=1";
  r.count("cases", 3);
  r.count("cases");
  r.fail("some-assertion", "detail", {Flag::standard(2, PrimeField(2))});
  CountPolynomial p;
  p.coefficients = {1, 1};
  p.degree = 1;
  r.polynomials.push_back({"X", {3}, p});
  const json j = json::parse(report_json(r));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  // nlohmann::json sorts keys; compare as a set.
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(keys, (std::vector<std::string>{"counterexamples", "counts", "d", "elapsed_ms", "failures", "passed",
                                            "polynomials", "q", "spec", "suite"}));
  EXPECT_EQ(report_json(r).rfind("{\n  \"suite\": \"invfix\",", 0), 0u);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["counts"]["cases"], 4);
  EXPECT_TRUE(j["elapsed_ms"].is_null());
  EXPECT_EQ(j["counterexamples"][0]["assertion"], "some-assertion");
  // Counterexample flags replay through the flag parser.
  const Flag back = parse_flag(j["counterexamples"][0]["flags"][0].get<std::string>());
  EXPECT_EQ(back, Flag::standard(2, PrimeField(2)));
  EXPECT_EQ(report_csv(r), "locus,degree,anomaly,coefficients\n\"X\",1,0,1;1\n");
}

TEST(Report, CounterexamplesAreCapped) {
  SuiteReport r;
  for (int i = 0; i < 40; ++i) r.fail("a", std::to_string(i));
  EXPECT_EQ(r.failures, 40u);
  EXPECT_EQ(r.counterexamples.size(), SuiteReport::kMaxCounterexamples);
  EXPECT_EQ(r.counterexamples.front().detail, "0");
}

TEST(Report, TimingOnlyWhenAsked) {
  SuiteConfig c = config("invfix", 3, {2});
  EXPECT_FALSE(run_suite(c).elapsed_ms.has_value());
  c.timing = true;
  EXPECT_TRUE(run_suite(c).elapsed_ms.has_value());
}

TEST(Report, DeterministicForFixedSeed) {
  for (const char* s : {"invfix", "schubert-counts", "multi-product"}) {
    SuiteConfig c = config(s, 3);
    c.seed = 99;
    EXPECT_EQ(report_json(run_suite(c)), report_json(run_suite(c))) << s;
    SuiteConfig other = c;
    other.seed = 100;
    EXPECT_TRUE(run_suite(other).passed) << s;
  }
  SuiteConfig a = config("codimension", 3);
  SuiteConfig b = a;
  b.threads = 4;
  EXPECT_EQ(report_json(run_suite(a)), report_json(run_suite(b)));
}
