// Acceptance run: one line per criterion, nonzero exit if any criterion fails.
// Every check is exact; the only thresholds are the wall-clock limits below.

#include "richkit/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace richkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!note.empty()) note += "; ";
    note += what;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Outcome&)> body;
};

SuiteReport run(const std::string& suite, int d, std::vector<int> qs, Outcome& out, Budget budget = {}) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.d = d;
  cfg.q_list = std::move(qs);
  cfg.budget = budget;
  SuiteReport r = run_suite(cfg);
  std::string where = suite + " d=" + std::to_string(d);
  out.require(r.passed, where + " reported " + std::to_string(r.failures) + " failure(s)" +
                            (r.counterexamples.empty() ? "" : ", first: " + r.counterexamples.front().assertion + " " +
                                                                  r.counterexamples.front().detail));
  return r;
}

void expect_count(const SuiteReport& r, const std::string& key, std::uint64_t n, Outcome& out) {
  out.require(r.counter(key) == n, r.suite + " " + key + "=" + std::to_string(r.counter(key)) + ", expected " +
                                       std::to_string(n));
}

}  // namespace

int main() {
  // q = 17 and 19 are needed to interpolate degree-6 counts in dimension 4.
  Budget wide;
  wide.max_points = 47045881;  // 19^6

  const std::vector<Criterion> criteria{
      {1, "Demazure axioms on S_4", 5.0,
       [](Outcome& o) {
         const auto r = run("demazure-axioms", 4, {}, o);
         expect_count(r, "pairs", 576, o);
         expect_count(r, "triples", 13824, o);
       }},
      {2, "invFix identity on adapted pairs, S_4 over F_2 and F_3", 5.0,
       [](Outcome& o) { expect_count(run("invfix", 4, {2, 3}, o), "adapted_pairs", 48, o); }},
      {3, "m_dim of pairs equals coinversions; three flags in dimension 3 never versal", 10.0,
       [](Outcome& o) {
         const auto r = run("m-dim", 4, {2}, o);
         expect_count(r, "permutations", 24, o);
         expect_count(r, "triples", 21 * 21 * 21, o);
       }},
      {4, "Image of R_{sigma,tau} is bounded by tau*sigma^-1 (d=3 q=2,3; d=4 q=2)", 60.0,
       [](Outcome& o) {
         expect_count(run("image-theorem", 3, {2, 3}, o), "cases", 2 * 36 * 6, o);
         expect_count(run("image-theorem", 4, {2}, o), "cases", 576 * 24, o);
       }},
      {5, "Richardson and multi-flag codimensions from interpolated point counts", 120.0,
       [&](Outcome& o) {
         const auto r3 = run("codimension", 3, {2, 3, 5, 7, 11, 13}, o);
         o.require(r3.counter("nonempty_pairs") + r3.counter("empty_pairs") == 36, "d=3 pairs incomplete");
         const auto r4 = run("codimension", 4, {2, 3, 5, 7, 11, 13, 17, 19}, o, wide);
         o.require(r4.counter("nonempty_pairs") + r4.counter("empty_pairs") == 576, "d=4 pairs incomplete");
         o.require(r4.counter("nonempty_pairs") >= 50, "fewer than 50 nonempty pairs in S_4 x S_4");
         expect_count(run("multi-product", 3, {2, 3}, o), "pairs", 72, o);
       }},
      {6, "Schubert point counts on S_4 over F_2 and F_3", 60.0,
       [](Outcome& o) { expect_count(run("schubert-counts", 4, {2, 3}, o), "loci", 48, o); }},
      {7, "Smoothness: pattern criterion and smooth locus of Richardson varieties (d=4, q=2)", 300.0,
       [](Outcome& o) {
         const auto r = run("smooth-locus", 4, {2}, o);
         expect_count(r, "schubert_loci", 24, o);
         expect_count(r, "richardson_pairs", 20, o);
         run("singular-locus", 4, {2, 3}, o);
       }},
      {8, "Full and essential rank conditions agree on S_4 over F_2", 60.0,
       [](Outcome& o) { expect_count(run("ess-reduction", 4, {2}, o), "checks", 315ull * 24 * 315, o); }},
      {9, "R_{id,sigma} is empty or the single point P over F_2", 10.0,
       [](Outcome& o) { expect_count(run("richardson-id", 4, {2}, o), "cases", 576, o); }},
      {10, "Identical configs give byte-identical reports", 120.0,
       [](Outcome& o) {
         for (const char* suite : {"invfix", "schubert-counts", "image-theorem", "smooth-locus", "codimension"}) {
           SuiteConfig a;
           a.suite = suite;
           a.d = 3;
           a.seed = 7;
           SuiteConfig b = a;
           b.threads = 3;
           const std::string x = report_json(run_suite(a));
           const std::string y = report_json(run_suite(a));
           const std::string z = report_json(run_suite(b));
           o.require(x == y, std::string(suite) + " differs between runs");
           o.require(x == z, std::string(suite) + " depends on the thread count");
         }
       }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.limit_s);
    o.require(secs < c.limit_s, std::string("over time limit (") + timing + ")");
    if (!o.ok) ++failed;
    std::printf("criterion %2d: %s  %s [%s]%s%s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, timing,
                o.note.empty() ? "" : " ", o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
