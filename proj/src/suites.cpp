#include "richkit/suites.hpp"

#include "richkit/demazure.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace richkit {

void SuiteReport::fail(std::string assertion, std::string detail, std::vector<Flag> flags) {
  passed = false;
  ++failures;
  if (counterexamples.size() < kMaxCounterexamples)
    counterexamples.push_back({std::move(assertion), std::move(detail), std::move(flags)});
}

void SuiteReport::count(const std::string& key, std::uint64_t n) {
  for (auto& [k, v] : counts)
    if (k == key) {
      v += n;
      return;
    }
  counts.emplace_back(key, n);
}

std::uint64_t SuiteReport::counter(const std::string& key) const {
  for (const auto& [k, v] : counts)
    if (k == key) return v;
  return 0;
}

namespace {

using Rng = std::mt19937_64;

// Uniform on [0, n) by rejection, so reports do not depend on the standard
// library's distribution algorithms.
std::uint64_t below(Rng& rng, std::uint64_t n) {
  const std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = top - top % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

Matrix random_invertible(int d, const PrimeField& f, Rng& rng) {
  Matrix m(d, d);
  do {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = static_cast<Residue>(below(rng, static_cast<std::uint64_t>(f.modulus())));
  } while (rank(m, f) < d);
  return m;
}

Flag random_flag(int d, const PrimeField& f, Rng& rng) { return Flag(random_invertible(d, f, rng), f).canonical(); }

std::uint64_t power(int q, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(q);
  return r;
}

std::string pair_name(const char* kind, const Perm& s, const Perm& t) {
  return std::string(kind) + " sigma=" + format_perm(s) + " tau=" + format_perm(t);
}

// Bruhat relation as a table over perm_index.
std::vector<char> bruhat_table(const std::vector<Perm>& perms) {
  const std::size_t n = perms.size();
  std::vector<char> leq(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = bruhat_leq(perms[i], perms[j]);
  return leq;
}

bool is_coordinate(MatrixView m) {
  for (int i = 0; i < m.rows(); ++i) {
    int ones = 0;
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 1) ++ones;
      else if (m(i, j) != 0) return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

struct Params {
  int d;
  std::vector<int> qs;
};

struct SuiteDef {
  const char* name;
  int default_d;
  int min_d;
  int max_d;
  std::vector<int> (*default_qs)(int d);
  void (*run)(const SuiteConfig& cfg, const Params& p, SuiteReport& r);
};

std::vector<int> no_qs(int) { return {}; }
std::vector<int> qs_2(int) { return {2}; }
std::vector<int> qs_23(int) { return {2, 3}; }
std::vector<int> qs_image(int d) { return d <= 3 ? std::vector<int>{2, 3} : std::vector<int>{2}; }
std::vector<int> qs_interp(int d) {
  if (d <= 3) return {2, 3, 5, 7, 11, 13};
  return {2, 3, 5, 7, 11, 13, 17, 19};
}

const std::vector<int> kMultiDegreePrimes{2, 3, 5, 7, 11, 13, 17, 19};

// ---------------------------------------------------------------------------

void run_demazure_axioms(const SuiteConfig&, const Params& p, SuiteReport& r) {
  const std::vector<Perm> perms = all_perms(p.d);
  const std::size_t n = perms.size();
  const Perm id = Perm::identity(p.d);
  std::vector<int> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Perm& a = perms[i];
      const Perm& b = perms[j];
      const Perm s = star(a, b);
      table[i * n + j] = perm_index(s);
      r.count("pairs");
      if (s != star_via_rank_formula(a, b))
        r.fail("recursion-vs-rank-formula", pair_name("star", a, b) + " recursion=" + format_perm(s));
      if (s != star(a, b, ReducedWordStrategy::kSelection))
        r.fail("reduced-word-independence", pair_name("star", a, b));
      if (s.inverse() != star(b.inverse(), a.inverse()))
        r.fail("inverse-identity", pair_name("star", a, b));
      if (inversions(a) + inversions(b) == inversions(a * b) && s != a * b)
        r.fail("length-additive-product", pair_name("star", a, b));
    }
  for (const Perm& a : perms)
    if (star(id, a) != a || star(a, id) != a) r.fail("identity-unit", format_perm(a));
  for (int i = 0; i + 1 < p.d; ++i) {
    const Perm s = id.times_simple(i);
    if (star(s, s) != s) r.fail("simple-idempotent", "s_" + std::to_string(i));
    for (const Perm& t : perms)
      if (star(t, s) != star_simple(t, i)) r.fail("simple-factor", format_perm(t) + " * s_" + std::to_string(i));
    r.count("simple_factors");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto left = table[static_cast<std::size_t>(table[i * n + j]) * n + k];
        const auto right = table[i * n + static_cast<std::size_t>(table[j * n + k])];
        r.count("triples");
        if (left != right)
          r.fail("associativity", format_perm(perms[i]) + " " + format_perm(perms[j]) + " " + format_perm(perms[k]));
      }
}

void run_invfix(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  Rng rng(cfg.seed);
  for (int q : p.qs) {
    const PrimeField f(q);
    for (const Perm& s : all_perms(p.d)) {
      const auto [a, b] = adapted_flags(s, f);
      r.count("adapted_pairs");
      if (assoc_perm(a, b) != s) r.fail("adapted-roundtrip", format_perm(s), {a, b});
      const int v = invfix_check(a, b);
      if (v != coinversions(s))
        r.fail("invfix-adapted", format_perm(s) + " q=" + std::to_string(q) + " got " + std::to_string(v), {a, b});
    }
    for (int t = 0; t < 50; ++t) {
      const Flag a = random_flag(p.d, f, rng), b = random_flag(p.d, f, rng);
      const Perm s = assoc_perm(a, b);
      r.count("random_pairs");
      if (invfix_check(a, b) != coinversions(s)) r.fail("invfix-random", format_perm(s), {a, b});
    }
  }
}

void run_m_dim(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  Rng rng(cfg.seed);
  for (int q : p.qs) {
    const PrimeField f(q);
    for (const Perm& s : all_perms(p.d)) {
      const auto [a, b] = adapted_flags(s, f);
      const std::vector<Flag> pair{a, b};
      const int m = m_dim(pair);
      r.count("permutations");
      if (m != coinversions(s))
        r.fail("m-dim-pair", format_perm(s) + " q=" + std::to_string(q) + " got " + std::to_string(m), pair);
    }
    const std::vector<Flag> transverse{Flag::standard(p.d, f), Flag::reversed(p.d, f)};
    if (m_dim(transverse) != 0) r.fail("m-dim-transverse", "q=" + std::to_string(q), transverse);

    // Three flags in dimension 3 are never versal.
    const FlagVariety fv = enumerate_flags(3, f, {}, cfg.budget);
    const std::size_t n = fv.size();
    auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
      const std::vector<Flag> tri{fv.point(i), fv.point(j), fv.point(k)};
      r.count("triples");
      if (m_dim(tri) <= 0) r.fail("m-dim-three-flags", "q=" + std::to_string(q), tri);
    };
    if (q <= 3) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) check(i, j, k);
    } else {
      for (int t = 0; t < 1000; ++t) check(below(rng, n), below(rng, n), below(rng, n));
    }
  }
}

void run_image_theorem(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  Rng rng(cfg.seed);
  const std::vector<Perm> perms = all_perms(p.d);
  const std::size_t n = perms.size();
  const std::vector<char> leq = bruhat_table(perms);
  r.count("sigma_tau_pairs", n * n);
  r.count("positions", n);
  for (int q : p.qs) {
    const PrimeField f(q);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    for (const Perm& pi : perms) {
      const auto [fp, fq] = adapted_flags(pi, f);
      const PositionKernel kp(fp), kq(fq);
      r.count("points_evaluated", fv.size());
      // Joint positions realised by points of Fl; R_{sigma,tau} is nonempty iff
      // one of them lies below (sigma, tau).
      std::vector<char> seen(n * n, 0);
      for (std::size_t i = 0; i < fv.size(); ++i)
        seen[static_cast<std::size_t>(kp.assoc_index(fv.basis(i))) * n +
             static_cast<std::size_t>(kq.assoc_index(fv.basis(i)))] = 1;
      std::vector<char> reach(n * n, 0), nonempty(n * n, 0);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < n; ++a)
          if (leq[a * n + s])
            for (std::size_t b = 0; b < n; ++b) reach[s * n + b] |= seen[a * n + b];
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          for (std::size_t b = 0; b < n; ++b)
            if (leq[b * n + t] && reach[s * n + b]) {
              nonempty[s * n + t] = 1;
              break;
            }
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
          const Perm bound = star(perms[t], perms[s].inverse());
          const bool expect = bruhat_leq(pi, bound);
          r.count("cases");
          if (static_cast<bool>(nonempty[s * n + t]) != expect)
            r.fail("image-equals-demazure-bound",
                   pair_name("R", perms[s], perms[t]) + " position=" + format_perm(pi) + " q=" + std::to_string(q) +
                       (expect ? " empty but expected nonempty" : " nonempty but expected empty"),
                   {fp, fq});
        }
    }
    // Equivariance: moving the reference pair by g does not change emptiness.
    for (int t = 0; t < 10; ++t) {
      const Perm& pi = perms[below(rng, n)];
      const Perm& s = perms[below(rng, n)];
      const Perm& tau = perms[below(rng, n)];
      const Matrix g = random_invertible(p.d, f, rng);
      const auto [fp, fq] = adapted_flags(pi, f);
      const bool here = !locus_indices(LocusSpec::richardson(s, tau, fp, fq), fv).empty();
      const Flag gp = fp.transformed(g), gq = fq.transformed(g);
      const bool there = !locus_indices(LocusSpec::richardson(s, tau, gp, gq), fv).empty();
      r.count("equivariance_trials");
      if (here != there) r.fail("equivariance", pair_name("R", s, tau), {fp, fq, gp, gq});
    }
  }
}

void run_codimension(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  const std::vector<Perm> perms = all_perms(p.d);
  const std::size_t n = perms.size();
  const int bound = flag_variety_dim(p.d, complete_coranks(p.d));
  std::vector<std::vector<std::uint64_t>> samples(n * n);
  for (int q : p.qs) {
    const PrimeField f(q);
    const PositionCensus census(p.d, Flag::reversed(p.d, f), cfg.budget, cfg.threads);
    r.count("flags_enumerated", census.total());
    const auto rc = census.richardson_counts();
    for (std::size_t i = 0; i < n * n; ++i) samples[i].push_back(rc[i]);
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      const auto& c = samples[s * n + t];
      const std::string name = pair_name("R", perms[s], perms[t]);
      const auto zeros = static_cast<std::size_t>(std::count(c.begin(), c.end(), 0u));
      if (zeros == c.size()) {
        r.count("empty_pairs");
        continue;
      }
      r.count("nonempty_pairs");
      if (zeros != 0) r.fail("nonempty-at-every-q", name);
      const CountPolynomial poly = interpolate_counts(p.qs, c, bound);
      r.polynomials.push_back({name, c, poly});
      const int expect = bound - coinversions(perms[s]) - coinversions(perms[t]);
      if (poly.anomaly) r.fail("integer-polynomial", name + ": " + poly.anomaly_reason);
      else if (poly.degree != expect)
        r.fail("richardson-codimension",
               name + " degree " + std::to_string(poly.degree) + " expected " + std::to_string(expect));
    }
}

void run_schubert_counts(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  Rng rng(cfg.seed);
  const std::vector<Perm> perms = all_perms(p.d);
  const std::size_t n = perms.size();
  const std::vector<char> leq = bruhat_table(perms);
  for (int q : p.qs) {
    const PrimeField f(q);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    const Flag ref = random_flag(p.d, f, rng);
    const PositionKernel kernel(ref);
    std::vector<std::uint64_t> cell(n, 0);
    for (std::size_t i = 0; i < fv.size(); ++i) ++cell[static_cast<std::size_t>(kernel.assoc_index(fv.basis(i)))];
    for (std::size_t w = 0; w < n; ++w)
      if (cell[w] != power(q, inversions(perms[w])))
        r.fail("cell-size", format_perm(perms[w]) + " q=" + std::to_string(q) + " got " + std::to_string(cell[w]),
               {ref});
    std::vector<std::vector<std::size_t>> sets(n);
    for (std::size_t s = 0; s < n; ++s) {
      sets[s] = locus_indices(LocusSpec::schubert(perms[s], ref), fv);
      r.count("loci");
      r.count("points", sets[s].size());
      std::uint64_t oracle = 0, cells = 0;
      for (std::size_t w = 0; w < n; ++w)
        if (leq[w * n + s]) {
          oracle += power(q, inversions(perms[w]));
          cells += cell[w];
        }
      if (sets[s].size() != oracle)
        r.fail("schubert-count", format_perm(perms[s]) + " q=" + std::to_string(q) + " got " +
                                     std::to_string(sets[s].size()) + " expected " + std::to_string(oracle),
               {ref});
      if (sets[s].size() != cells) r.fail("cell-union", format_perm(perms[s]) + " q=" + std::to_string(q), {ref});
    }
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t s = 0; s < n; ++s)
        if (leq[w * n + s]) {
          r.count("monotonicity_pairs");
          if (!std::includes(sets[s].begin(), sets[s].end(), sets[w].begin(), sets[w].end()))
            r.fail("monotonicity", format_perm(perms[w]) + " <= " + format_perm(perms[s]), {ref});
        }
  }
}

// Per-point smoothness of X_sigma(ref), computed lazily and cached.
class SmoothnessCache {
 public:
  SmoothnessCache(const FlagVariety& fv, const Flag& ref) : fv_(fv), ref_(ref) {}

  // 1 smooth, 0 singular; only defined on points of the locus.
  const std::vector<signed char>& of(const Perm& sigma) {
    auto it = cache_.find(sigma);
    if (it != cache_.end()) return it->second;
    std::vector<signed char> s(fv_.size(), -1);
    const LocusSpec spec = LocusSpec::schubert(sigma, ref_);
    for (std::size_t i : locus_indices(spec, fv_)) s[i] = tangent_dim(fv_.point(i), spec).smooth ? 1 : 0;
    return cache_.emplace(sigma, std::move(s)).first->second;
  }

 private:
  const FlagVariety& fv_;
  Flag ref_;
  std::map<Perm, std::vector<signed char>> cache_;
};

void run_smooth_locus(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  const std::vector<Perm> perms = all_perms(p.d);
  const Perm w0 = descending(p.d);
  for (int q : p.qs) {
    const PrimeField f(q);
    Rng rng(cfg.seed);
    const Flag fp = Flag::standard(p.d, f), fq = Flag::reversed(p.d, f);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    SmoothnessCache at_p(fv, fp), at_q(fv, fq);

    for (const Perm& s : perms) {
      const auto& sm = at_p.of(s);
      bool singular = false, singular_coordinate = false;
      std::size_t witness = 0;
      for (std::size_t i = 0; i < fv.size(); ++i) {
        if (sm[i] != 0) continue;
        if (!singular) witness = i;
        singular = true;
        if (is_coordinate(fv.basis(i))) singular_coordinate = true;
      }
      r.count("schubert_loci");
      if (singular == ls_smooth(s))
        r.fail("lakshmibai-sandhya", format_perm(s) + (singular ? " singular but pattern-avoiding" : " smooth"),
               singular ? std::vector<Flag>{fv.point(witness), fp} : std::vector<Flag>{fp});
      if (singular != singular_coordinate)
        r.fail("coordinate-flag-sufficiency", format_perm(s), {fv.point(witness), fp});
      if (singular) r.count("singular_schubert_loci");
    }

    // Nonempty Richardson loci; sample 20, always including the first singular
    // example when it exists.
    std::vector<std::pair<Perm, Perm>> nonempty, sample;
    for (const Perm& s : perms)
      for (const Perm& t : perms)
        if (!locus_indices(LocusSpec::richardson(s, t, fp, fq), fv).empty()) nonempty.emplace_back(s, t);
    if (p.d == 4) {
      const std::pair<Perm, Perm> fixed{Perm({2, 3, 0, 1}), w0};
      sample.push_back(fixed);
      nonempty.erase(std::find(nonempty.begin(), nonempty.end(), fixed));
    }
    while (sample.size() < 20 && !nonempty.empty()) {
      const std::size_t k = below(rng, nonempty.size());
      sample.push_back(nonempty[k]);
      nonempty.erase(nonempty.begin() + static_cast<std::ptrdiff_t>(k));
    }
    for (const auto& [s, t] : sample) {
      const LocusSpec spec = LocusSpec::richardson(s, t, fp, fq);
      const auto& sx = at_p.of(s);
      const auto& st = at_q.of(t);
      r.count("richardson_pairs");
      for (std::size_t i : locus_indices(spec, fv)) {
        const TangentReport tr = tangent_dim(fv.point(i), spec);
        const bool product = sx[i] == 1 && st[i] == 1;
        r.count("richardson_points");
        if (!tr.smooth) r.count("singular_richardson_points");
        if (tr.smooth != product)
          r.fail("smooth-locus-intersection",
                 pair_name("R", s, t) + " tangent=" + std::to_string(tr.tangent_dim) +
                     " dim=" + std::to_string(tr.locus_dim),
                 {fv.point(i), fp, fq});
      }
    }
    for (const Perm& t : perms) {
      const LocusSpec spec = LocusSpec::richardson(Perm::identity(p.d), t, fp, fq);
      for (std::size_t i : locus_indices(spec, fv))
        if (!tangent_dim(fv.point(i), spec).smooth)
          r.fail("identity-richardson-smooth", format_perm(t), {fv.point(i), fp, fq});
    }
  }
}

void run_singular_locus(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  const std::vector<Perm> perms = all_perms(p.d);
  const std::size_t n = perms.size();
  // Singular cells of X_sigma(standard) for each sigma, from the first field.
  std::vector<std::vector<char>> first(n);
  for (std::size_t qi = 0; qi < p.qs.size(); ++qi) {
    const int q = p.qs[qi];
    const PrimeField f(q);
    const Flag fp = Flag::standard(p.d, f);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    SmoothnessCache cache(fv, fp);
    for (std::size_t s = 0; s < n; ++s) {
      const auto& sm = cache.of(perms[s]);
      // -1 unseen, else the common value on the cell.
      std::vector<int> state(fv.cell_list().size(), -1);
      std::uint64_t singular_points = 0;
      for (std::size_t i = 0; i < fv.size(); ++i) {
        if (sm[i] < 0) continue;
        const int c = fv.cell(i);
        if (sm[i] == 0) ++singular_points;
        auto& st = state[static_cast<std::size_t>(c)];
        if (st < 0) st = sm[i];
        else if (st != sm[i])
          r.fail("singular-locus-cell-constant", format_perm(perms[s]) + " q=" + std::to_string(q),
                 {fv.point(i), fp});
      }
      std::vector<char> cells(n, 0);
      std::vector<std::int64_t> coeff;
      for (std::size_t c = 0; c < state.size(); ++c)
        if (state[c] == 0) {
          const Perm& w = fv.cell_list()[c];
          cells[static_cast<std::size_t>(perm_index(w))] = 1;
          const auto k = static_cast<std::size_t>(inversions(w));
          if (coeff.size() <= k) coeff.resize(k + 1, 0);
          ++coeff[k];
        }
      r.count("singular_points", singular_points);
      if (qi == 0) {
        first[s] = cells;
      } else if (first[s] != cells) {
        r.fail("singular-cells-independent-of-q", format_perm(perms[s]) + " q=" + std::to_string(q));
      }
      if (qi + 1 != p.qs.size() || coeff.empty()) continue;
      CountPolynomial poly;
      poly.coefficients = coeff;
      poly.degree = static_cast<int>(coeff.size()) - 1;
      std::vector<std::uint64_t> samples;
      for (int qq : p.qs) samples.push_back(static_cast<std::uint64_t>(poly(qq)));
      if (samples.back() != singular_points)
        r.fail("singular-count-from-cells", format_perm(perms[s]));
      r.polynomials.push_back({"Sing X sigma=" + format_perm(perms[s]), samples, poly});
      r.count("singular_schubert_loci");
      if (poly.degree > inversions(perms[s]) - 2)
        r.fail("regular-in-codimension-one",
               format_perm(perms[s]) + " singular locus degree " + std::to_string(poly.degree));
    }
  }
}

void run_ess_reduction(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  const std::vector<Perm> perms = all_perms(p.d);
  for (int q : p.qs) {
    const PrimeField f(q);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    for (std::size_t k = 0; k < fv.size(); ++k) {
      const Flag ref = fv.point(k);
      r.count("references");
      for (const Perm& s : perms) {
        const LocusSpec spec = LocusSpec::schubert(s, ref);
        for (std::size_t i = 0; i < fv.size(); ++i) {
          r.count("checks");
          if (contains(spec, fv.basis(i), Conditions::kFull) != contains(spec, fv.basis(i), Conditions::kEssential))
            r.fail("full-equals-essential", format_perm(s) + " q=" + std::to_string(q), {fv.point(i), ref});
        }
      }
    }
  }
}

void run_richardson_id(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  const std::vector<Perm> perms = all_perms(p.d);
  const Perm id = Perm::identity(p.d);
  for (int q : p.qs) {
    const PrimeField f(q);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    for (const Perm& pi : perms) {
      const auto [fp, fq] = adapted_flags(pi, f);
      r.count("positions");
      for (const Perm& s : perms) {
        const auto pts = locus_points(LocusSpec::richardson(id, s, fp, fq), fv);
        const bool expect = bruhat_leq(pi, s);
        r.count("cases");
        if (pts.size() > 1)
          r.fail("at-most-one-point", pair_name("R", id, s) + " position=" + format_perm(pi), {fp, fq});
        if (pts.empty() == expect)
          r.fail("nonempty-iff-below", pair_name("R", id, s) + " position=" + format_perm(pi), {fp, fq});
        if (!pts.empty() && !(pts.front() == fp))
          r.fail("point-is-reference", pair_name("R", id, s) + " position=" + format_perm(pi), {pts.front(), fp, fq});
      }
    }
  }
}

void run_multi_product(const SuiteConfig& cfg, const Params& p, SuiteReport& r) {
  Rng rng(cfg.seed);
  const std::vector<Perm> perms = all_perms(p.d);
  for (int q : p.qs) {
    const PrimeField f(q);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    const Flag ref = random_flag(p.d, f, rng);
    std::vector<std::vector<std::size_t>> single;
    for (const Perm& s : perms) single.push_back(locus_indices(LocusSpec::schubert(s.inverse(), ref), fv));
    for (std::size_t a = 0; a < perms.size(); ++a)
      for (std::size_t b = 0; b < perms.size(); ++b) {
        const LocusSpec spec = LocusSpec::multi({perms[a], perms[b]}, ref);
        const auto tuples = multi_locus_points(spec, fv);
        std::vector<std::vector<std::size_t>> product;
        for (std::size_t i : single[a])
          for (std::size_t j : single[b]) product.push_back({i, j});
        r.count("pairs");
        r.count("tuples", tuples.size());
        if (tuples != product) r.fail("product-decomposition", pair_name("D", perms[a], perms[b]), {ref});
      }
    // Direct intersection test on every tuple for the first pair of permutations
    // with a proper condition on each factor.
    if (q == p.qs.front() && perms.size() > 2) {
      const Perm& s1 = perms[1];
      const Perm& s2 = perms[perms.size() - 2];
      const LocusSpec spec = LocusSpec::multi({s1, s2}, ref);
      const auto tuples = multi_locus_points(spec, fv);
      std::size_t hits = 0;
      for (std::size_t i = 0; i < fv.size(); ++i)
        for (std::size_t j = 0; j < fv.size(); ++j) {
          const std::vector<Flag> t{fv.point(i), fv.point(j)};
          r.count("direct_checks");
          if (contains_tuple(spec, t)) {
            ++hits;
            if (!std::binary_search(tuples.begin(), tuples.end(), std::vector<std::size_t>{i, j}))
              r.fail("direct-membership", pair_name("D", s1, s2), {t[0], t[1], ref});
          }
        }
      if (hits != tuples.size()) r.fail("direct-membership-count", pair_name("D", s1, s2), {ref});
    }
  }
  // Degrees from factor counts over enough primes for the two-factor bound.
  const int bound = 2 * flag_variety_dim(p.d, complete_coranks(p.d));
  std::vector<std::vector<std::uint64_t>> factor(perms.size());
  for (int q : kMultiDegreePrimes) {
    const PrimeField f(q);
    const FlagVariety fv = enumerate_flags(p.d, f, {}, cfg.budget);
    const Flag ref = Flag::standard(p.d, f);
    for (std::size_t s = 0; s < perms.size(); ++s)
      factor[s].push_back(locus_indices(LocusSpec::schubert(perms[s].inverse(), ref), fv).size());
  }
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<std::uint64_t> c;
      for (std::size_t k = 0; k < kMultiDegreePrimes.size(); ++k) c.push_back(factor[a][k] * factor[b][k]);
      const std::string name = pair_name("D", perms[a], perms[b]);
      const CountPolynomial poly = interpolate_counts(kMultiDegreePrimes, c, bound);
      r.polynomials.push_back({name, c, poly});
      const int expect = bound - coinversions(perms[a]) - coinversions(perms[b]);
      const LocusSpec spec = LocusSpec::multi({perms[a], perms[b]}, Flag::standard(p.d, PrimeField(2)));
      if (poly.anomaly) r.fail("integer-polynomial", name + ": " + poly.anomaly_reason);
      else if (poly.degree != expect || spec.expected_dim() != expect)
        r.fail("multi-codimension", name + " degree " + std::to_string(poly.degree) + " expected " +
                                        std::to_string(expect));
    }
}

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs{
      {"demazure-axioms", 4, 1, 5, no_qs, run_demazure_axioms},
      {"invfix", 4, 1, 5, qs_23, run_invfix},
      {"m-dim", 4, 1, 5, qs_2, run_m_dim},
      {"image-theorem", 3, 1, 4, qs_image, run_image_theorem},
      {"codimension", 3, 1, 4, qs_interp, run_codimension},
      {"schubert-counts", 4, 1, 4, qs_23, run_schubert_counts},
      {"smooth-locus", 4, 1, 4, qs_2, run_smooth_locus},
      {"singular-locus", 4, 1, 4, qs_23, run_singular_locus},
      {"ess-reduction", 4, 1, 4, qs_2, run_ess_reduction},
      {"richardson-id", 4, 1, 4, qs_2, run_richardson_id},
      {"multi-product", 3, 1, 3, qs_23, run_multi_product},
  };
  return defs;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& def : registry()) v.emplace_back(def.name);
    return v;
  }();
  return names;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  const auto& defs = registry();
  const auto it = std::find_if(defs.begin(), defs.end(), [&](const SuiteDef& s) { return cfg.suite == s.name; });
  if (it == defs.end()) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  Params p{cfg.d ? cfg.d : it->default_d, {}};
  if (p.d < it->min_d || p.d > it->max_d)
    throw std::invalid_argument(cfg.suite + " supports d in [" + std::to_string(it->min_d) + ", " +
                                std::to_string(it->max_d) + "], got " + std::to_string(p.d));
  p.qs = cfg.q_list.empty() ? it->default_qs(p.d) : cfg.q_list;
  if (it->default_qs(p.d).empty() && !cfg.q_list.empty())
    throw std::invalid_argument(cfg.suite + " takes no field sizes");
  for (std::size_t i = 0; i < p.qs.size(); ++i) {
    if (!is_prime(p.qs[i])) throw std::invalid_argument("q=" + std::to_string(p.qs[i]) + " is not prime");
    if (std::find(p.qs.begin(), p.qs.begin() + static_cast<std::ptrdiff_t>(i), p.qs[i]) !=
        p.qs.begin() + static_cast<std::ptrdiff_t>(i))
      throw std::invalid_argument("q=" + std::to_string(p.qs[i]) + " listed twice");
  }
  if (cfg.threads < 1) throw std::invalid_argument("threads must be positive");

  SuiteReport r;
  r.suite = it->name;
  r.d = p.d;
  r.qs = p.qs;
  r.spec = r.suite + " d=" + std::to_string(p.d);
  if (!p.qs.empty()) r.spec += " q=" + join(p.qs);
  r.spec += " seed=" + std::to_string(cfg.seed);
  const auto t0 = std::chrono::steady_clock::now();
  it->run(cfg, p, r);
  if (cfg.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string report_json(const SuiteReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = r.suite;
  j["d"] = r.d;
  j["q"] = r.qs;
  j["spec"] = r.spec;
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  ordered_json ce = ordered_json::array();
  for (const auto& c : r.counterexamples) {
    ordered_json e;
    e["assertion"] = c.assertion;
    e["detail"] = c.detail;
    e["flags"] = ordered_json::array();
    for (const Flag& fl : c.flags) e["flags"].push_back(format_flag(fl));
    ce.push_back(std::move(e));
  }
  j["counterexamples"] = std::move(ce);
  ordered_json counts = ordered_json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  j["counts"] = std::move(counts);
  ordered_json polys = ordered_json::array();
  for (const auto& pr : r.polynomials) {
    ordered_json e;
    e["locus"] = pr.locus;
    e["samples"] = pr.samples;
    e["coefficients"] = pr.poly.coefficients;
    e["degree"] = pr.poly.degree;
    e["anomaly"] = pr.poly.anomaly;
    polys.push_back(std::move(e));
  }
  j["polynomials"] = std::move(polys);
  j["elapsed_ms"] = r.elapsed_ms ? ordered_json(*r.elapsed_ms) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

std::string report_csv(const SuiteReport& r) {
  std::ostringstream out;
  out << "locus,degree,anomaly,coefficients\n";
  for (const auto& pr : r.polynomials) {
    out << '"' << pr.locus << "\"," << pr.poly.degree << ',' << (pr.poly.anomaly ? 1 : 0) << ',';
    for (std::size_t k = 0; k < pr.poly.coefficients.size(); ++k) out << (k ? ";" : "") << pr.poly.coefficients[k];
    out << '\n';
  }
  return out.str();
}

}  // namespace richkit
