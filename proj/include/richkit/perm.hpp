#pragma once

// Permutation combinatorics on [d] = {0, ..., d-1}.
//
// Conventions used throughout richkit:
//   * permutations are 0-indexed and written in one-line notation, so the word
//     "4,2,3,1,0" is the map 0->4, 1->2, 2->3, 3->1, 4->0;
//   * composition is (p * q)(i) = p(q(i)); right multiplication by a simple
//     transposition swaps two adjacent *positions* of the one-line word;
//   * flags are indexed by codimension, and the rank function is
//     r(a,b) = #{a' >= a : p(a') >= b}, zero whenever a >= d or b >= d;
//   * Bruhat order: p <= q iff r^p >= r^q entrywise.
// Most references use 1-indexed permutations and dimension-indexed flags; no
// translation layer is provided.

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace richkit {

class Perm {
 public:
  Perm() = default;
  /// Throws std::invalid_argument unless `word` is a bijection of [d].
  explicit Perm(std::vector<int> word);

  static Perm identity(int d);

  int degree() const { return static_cast<int>(word_.size()); }
  int operator()(int i) const { return word_[static_cast<std::size_t>(i)]; }
  std::span<const int> word() const { return word_; }

  Perm inverse() const;
  bool is_identity() const;

  /// Right multiplication by the simple transposition swapping positions s, s+1.
  Perm times_simple(int s) const;

  friend Perm operator*(const Perm& p, const Perm& q);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> word_;
};

/// The (d+1) x (d+1) table r(a,b). Row d and column d are stored (always 0).
class RankTable {
 public:
  using Values = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  RankTable() = default;
  explicit RankTable(Values values);

  int degree() const { return static_cast<int>(values_.rows()) - 1; }
  int operator()(int a, int b) const { return values_(a, b); }
  const Values& values() const { return values_; }

  friend bool operator==(const RankTable& x, const RankTable& y) {
    return x.values_.rows() == y.values_.rows() && x.values_ == y.values_;
  }

 private:
  Values values_;
};

/// A chain [d] = A^{i_0} > A^{i_1} > ... > A^{i_s} = {} with |A^{i_j}| = d - i_j.
class NestOfSets {
 public:
  NestOfSets() = default;
  /// `sets[j]` is A^{i_j}; coranks are read off the cardinalities.
  NestOfSets(int d, std::vector<std::vector<int>> sets);

  int degree() const { return d_; }
  const std::vector<int>& coranks() const { return coranks_; }
  /// Each set is stored sorted ascending.
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  bool is_complete() const { return static_cast<int>(coranks_.size()) == d_ + 1; }

  friend bool operator==(const NestOfSets&, const NestOfSets&) = default;

 private:
  int d_ = 0;
  std::vector<int> coranks_;
  std::vector<std::vector<int>> sets_;
};

using Cell = std::pair<int, int>;

std::int64_t binomial(int n, int k);

int inversions(const Perm& p);
Perm descending(int d);
/// inv(omega * p) = C(d,2) - inv(p).
int coinversions(const Perm& p);

RankTable rank_table(const Perm& p);
/// Reads the permutation off the double differences. Throws std::invalid_argument
/// if the table is not the rank table of a permutation.
Perm perm_from_rank_table(const RankTable& t);

/// Throws std::invalid_argument on degree mismatch.
bool bruhat_leq(const Perm& p, const Perm& q);

/// Pairs (a,b) with 1 <= a,b < d, p(a-1) < b <= p(a), p^{-1}(b-1) < a <= p^{-1}(b).
std::vector<Cell> essential_set(const Perm& p);

Perm decreasing_completion(const NestOfSets& n);
/// The complete nest A^k = {p(k), ..., p(d-1)}.
NestOfSets nest_of_perm(const Perm& p);

bool contains_pattern(const Perm& p, const Perm& pattern);
/// Avoids 3120 and 2301 (4231 and 3412 in 1-indexed notation).
bool ls_smooth(const Perm& p);
/// p is decreasing on every block [i_j, i_{j+1}) of the corank list, which puts
/// every row of Ess(p) in the list. Completions of nests always qualify.
bool ess_rows_compatible(const Perm& p, std::span<const int> coranks);

/// All of S_d in lexicographic order of one-line words.
std::vector<Perm> all_perms(int d);
/// Position of p in all_perms(p.degree()).
int perm_index(const Perm& p);

/// "4,2,3,1,0"
std::string format_perm(const Perm& p);
Perm parse_perm(const std::string& text);
/// "0,1,2,3,4;0,1,3;" (largest set first, trailing empty set).
std::string format_nest(const NestOfSets& n);
NestOfSets parse_nest(const std::string& text);

}  // namespace richkit
