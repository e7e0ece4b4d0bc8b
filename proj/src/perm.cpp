#include "richkit/perm.hpp"

#include "richkit/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace richkit {

Perm::Perm(std::vector<int> word) : word_(std::move(word)) {
  const int d = degree();
  std::vector<char> seen(word_.size(), 0);
  for (int v : word_) {
    if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation of [" + std::to_string(d) + "]");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Perm Perm::identity(int d) {
  std::vector<int> w(static_cast<std::size_t>(d));
  std::iota(w.begin(), w.end(), 0);
  return Perm(std::move(w));
}

Perm Perm::inverse() const {
  std::vector<int> w(word_.size());
  for (int i = 0; i < degree(); ++i) w[static_cast<std::size_t>((*this)(i))] = i;
  return Perm(std::move(w));
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

Perm Perm::times_simple(int s) const {
  if (s < 0 || s + 1 >= degree()) {
    throw std::out_of_range("simple transposition index " + std::to_string(s) +
                            " out of range for degree " + std::to_string(degree()));
  }
  std::vector<int> w = word_;
  std::swap(w[static_cast<std::size_t>(s)], w[static_cast<std::size_t>(s + 1)]);
  return Perm(std::move(w));
}

Perm operator*(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("degree mismatch in composition");
  std::vector<int> w(static_cast<std::size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) w[static_cast<std::size_t>(i)] = p(q(i));
  return Perm(std::move(w));
}

RankTable::RankTable(Values values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols() || values_.rows() < 1) {
    throw std::invalid_argument("rank table must be square of size (d+1)");
  }
}

NestOfSets::NestOfSets(int d, std::vector<std::vector<int>> sets) : d_(d), sets_(std::move(sets)) {
  if (d < 1) throw std::invalid_argument("nest of sets needs d >= 1");
  if (sets_.size() < 2) throw std::invalid_argument("nest of sets needs at least [d] and {}");
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("nest of sets: repeated element");
    for (int v : s)
      if (v < 0 || v >= d) throw std::invalid_argument("nest of sets: element outside [d]");
  }
  if (static_cast<int>(sets_.front().size()) != d)
    throw std::invalid_argument("nest of sets must start with [d]");
  if (!sets_.back().empty()) throw std::invalid_argument("nest of sets must end with the empty set");
  for (std::size_t j = 0; j + 1 < sets_.size(); ++j) {
    const auto& big = sets_[j];
    const auto& small = sets_[j + 1];
    if (small.size() >= big.size() || !std::includes(big.begin(), big.end(), small.begin(), small.end()))
      throw std::invalid_argument("nest of sets must be strictly decreasing under inclusion");
  }
  for (const auto& s : sets_) coranks_.push_back(d - static_cast<int>(s.size()));
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int inversions(const Perm& p) {
  int n = 0;
  for (int i = 0; i < p.degree(); ++i)
    for (int j = i + 1; j < p.degree(); ++j)
      if (p(i) > p(j)) ++n;
  return n;
}

Perm descending(int d) {
  if (d < 1) throw std::invalid_argument("descending permutation needs d >= 1");
  std::vector<int> w(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = d - 1 - i;
  return Perm(std::move(w));
}

int coinversions(const Perm& p) { return inversions(descending(p.degree()) * p); }

RankTable rank_table(const Perm& p) {
  const int d = p.degree();
  RankTable::Values v = RankTable::Values::Zero(d + 1, d + 1);
  // Suffix sums of the permutation matrix.
  for (int a = d - 1; a >= 0; --a)
    for (int b = d - 1; b >= 0; --b)
      v(a, b) = v(a + 1, b) + v(a, b + 1) - v(a + 1, b + 1) + (p(a) == b ? 1 : 0);
  return RankTable(std::move(v));
}

Perm perm_from_rank_table(const RankTable& t) {
  const int d = t.degree();
  const auto& v = t.values();
  for (int i = 0; i <= d; ++i)
    if (v(d, i) != 0 || v(i, d) != 0)
      throw std::invalid_argument("rank table must vanish on row d and column d");
  std::vector<int> word(static_cast<std::size_t>(d), -1);
  std::vector<int> col_hits(static_cast<std::size_t>(d), 0);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const int dd = v(a, b) - v(a + 1, b) - v(a, b + 1) + v(a + 1, b + 1);
      if (dd != 0 && dd != 1) throw std::invalid_argument("rank table has double difference outside {0,1}");
      if (dd == 1) {
        if (word[static_cast<std::size_t>(a)] != -1) throw std::invalid_argument("rank table row has two ones");
        word[static_cast<std::size_t>(a)] = b;
        ++col_hits[static_cast<std::size_t>(b)];
      }
    }
    if (word[static_cast<std::size_t>(a)] == -1) throw std::invalid_argument("rank table row has no one");
  }
  for (int c : col_hits)
    if (c != 1) throw std::invalid_argument("rank table column does not have exactly one one");
  return Perm(std::move(word));
}

bool bruhat_leq(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("degree mismatch in Bruhat comparison");
  return (rank_table(p).values().array() >= rank_table(q).values().array()).all();
}

std::vector<Cell> essential_set(const Perm& p) {
  const int d = p.degree();
  const Perm pinv = p.inverse();
  std::vector<Cell> out;
  for (int a = 1; a < d; ++a)
    for (int b = 1; b < d; ++b)
      if (p(a - 1) < b && b <= p(a) && pinv(b - 1) < a && a <= pinv(b)) out.emplace_back(a, b);
  return out;
}

Perm decreasing_completion(const NestOfSets& n) {
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(n.degree()));
  const auto& sets = n.sets();
  for (std::size_t j = 0; j + 1 < sets.size(); ++j) {
    std::vector<int> diff;
    std::set_difference(sets[j].begin(), sets[j].end(), sets[j + 1].begin(), sets[j + 1].end(),
                        std::back_inserter(diff));
    word.insert(word.end(), diff.rbegin(), diff.rend());
  }
  return Perm(std::move(word));
}

NestOfSets nest_of_perm(const Perm& p) {
  const int d = p.degree();
  std::vector<std::vector<int>> sets;
  for (int k = 0; k <= d; ++k) {
    std::vector<int> s;
    for (int i = k; i < d; ++i) s.push_back(p(i));
    sets.push_back(std::move(s));
  }
  return NestOfSets(d, std::move(sets));
}

bool contains_pattern(const Perm& p, const Perm& pattern) {
  const int n = p.degree();
  const int k = pattern.degree();
  if (k > n) return false;
  if (k == 0) return true;
  // Positions pos[0] < ... < pos[k-1]; lexicographic enumeration of k-subsets.
  std::vector<int> pos(static_cast<std::size_t>(k));
  std::iota(pos.begin(), pos.end(), 0);
  while (true) {
    bool iso = true;
    for (int x = 0; x < k && iso; ++x)
      for (int y = x + 1; y < k && iso; ++y)
        iso = (p(pos[static_cast<std::size_t>(x)]) < p(pos[static_cast<std::size_t>(y)])) ==
              (pattern(x) < pattern(y));
    if (iso) return true;
    int i = k - 1;
    while (i >= 0 && pos[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++pos[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
  }
}

bool ls_smooth(const Perm& p) {
  static const Perm p3120({3, 1, 2, 0});
  static const Perm p2301({2, 3, 0, 1});
  return !contains_pattern(p, p3120) && !contains_pattern(p, p2301);
}

bool ess_rows_compatible(const Perm& p, std::span<const int> coranks) {
  for (std::size_t j = 0; j + 1 < coranks.size(); ++j)
    for (int a = coranks[j]; a + 1 < coranks[j + 1]; ++a)
      if (p(a) < p(a + 1)) return false;
  return true;
}

std::vector<Perm> all_perms(int d) {
  std::vector<int> w(static_cast<std::size_t>(d));
  std::iota(w.begin(), w.end(), 0);
  std::vector<Perm> out;
  do {
    out.emplace_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

int perm_index(const Perm& p) {
  // Lehmer code in the factorial number system.
  const int d = p.degree();
  int index = 0;
  for (int i = 0; i < d; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < d; ++j)
      if (p(j) < p(i)) ++smaller;
    index = index * (d - i) + smaller;
  }
  return index;
}

std::string format_perm(const Perm& p) {
  std::string out;
  for (int i = 0; i < p.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(p(i));
  }
  return out;
}

namespace {

// Parses a comma-separated list of non-negative integers starting at column `col0`.
std::vector<int> parse_int_list(const std::string& text, int col0) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t i = 0;
  while (true) {
    const std::size_t start = i;
    long value = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      value = value * 10 + (text[i] - '0');
      if (value > 1000000) throw ParseError("integer too large", 1, col0 + static_cast<int>(start));
      ++i;
    }
    if (i == start) throw ParseError("expected a non-negative integer", 1, col0 + static_cast<int>(i));
    out.push_back(static_cast<int>(value));
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError(std::string("unexpected character '") + text[i] + "'", 1,
                                         col0 + static_cast<int>(i));
    ++i;
    if (i == text.size()) throw ParseError("trailing comma", 1, col0 + static_cast<int>(i));
  }
  return out;
}

}  // namespace

Perm parse_perm(const std::string& text) {
  std::vector<int> w = parse_int_list(text, 1);
  if (w.empty()) throw ParseError("empty permutation", 1, 1);
  try {
    return Perm(std::move(w));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

std::string format_nest(const NestOfSets& n) {
  std::string out;
  const auto& sets = n.sets();
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (std::size_t k = 0; k < sets[j].size(); ++k) {
      if (k) out += ',';
      out += std::to_string(sets[j][k]);
    }
    if (j + 1 < sets.size()) out += ';';
  }
  return out;
}

NestOfSets parse_nest(const std::string& text) {
  std::vector<std::vector<int>> sets;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    const std::string piece = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    sets.push_back(parse_int_list(piece, static_cast<int>(start) + 1));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (sets.empty() || sets.front().empty()) throw ParseError("nest must start with [d]", 1, 1);
  const int d = static_cast<int>(sets.front().size());
  try {
    return NestOfSets(d, std::move(sets));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

}  // namespace richkit
