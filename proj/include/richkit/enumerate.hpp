#pragma once

// Brute-force enumeration of (partial) flag varieties over F_q.
//
// Flags are produced in the normal form of Flag::canonical(), cell by cell:
// for a permutation pi that increases on every corank block, row i has a 1 in
// column pi(i), zeros to its left and in the columns pi(j) of later rows, and
// free entries in the columns pi(j), j < i, with pi(j) > pi(i). Relative to the
// standard flag such a point has associated permutation pi. Cells come in
// lexicographic order of pi, points inside a cell in odometer order of the
// free entries (last free entry fastest).

#include "richkit/errors.hpp"
#include "richkit/flags.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace richkit {

struct Budget {
  static constexpr std::uint64_t kDefaultPoints = 4826809;  // 13^6
  static constexpr int kDefaultMaxDegree = 4;

  /// Cap on q^{dim Fl}; exact counts are a small multiple of this.
  std::uint64_t max_points = kDefaultPoints;
  int max_degree = kDefaultMaxDegree;

  /// Defaults, with max_points replaced by $RICHKIT_BUDGET when set.
  /// Throws std::invalid_argument on a malformed value.
  static Budget from_env();
  /// Throws BudgetExceeded if Fl(coranks; F_q^d) is over the cap.
  void check(int d, int q, const std::vector<int>& coranks) const;
};

/// dim Fl(coranks; k^d) = C(d,2) - sum over blocks of C(size,2).
int flag_variety_dim(int d, const std::vector<int>& coranks);
/// The q-multinomial [d]_q! / prod [block]_q!.
std::uint64_t flag_count(int d, int q, const std::vector<int>& coranks);
/// Permutations increasing on every block, in lexicographic order.
std::vector<Perm> cell_perms(int d, const std::vector<int>& coranks);

/// Calls fn(basis) for every flag in the cell of pi, in odometer order. `basis`
/// is a d x d Matrix reused between calls. No budget check.
template <typename Fn>
void for_each_flag_in_cell(const Perm& pi, const PrimeField& f, Fn&& fn);

/// Calls fn(basis, cell) for every flag, in canonical order.
template <typename Fn>
void for_each_flag(int d, const PrimeField& f, const std::vector<int>& coranks, const Budget& budget, Fn&& fn);

class FlagVariety {
 public:
  FlagVariety(int d, const PrimeField& f, std::vector<int> coranks);

  int dim() const { return d_; }
  const PrimeField& field() const { return field_; }
  const std::vector<int>& coranks() const { return coranks_; }
  std::size_t size() const { return cells_.size(); }

  /// Adapted basis of point i, a view into contiguous storage.
  Eigen::Map<const Matrix> basis(std::size_t i) const {
    return Eigen::Map<const Matrix>(data_.data() + i * static_cast<std::size_t>(d_ * d_), d_, d_);
  }
  Flag point(std::size_t i) const { return Flag(Matrix(basis(i)), field_, coranks_); }
  /// Cell of point i, as an index into cell_perms(d, coranks).
  int cell(std::size_t i) const { return cells_[i]; }
  const std::vector<Perm>& cell_list() const { return cell_list_; }

  void push_back(const Matrix& basis, int cell);

 private:
  int d_;
  PrimeField field_;
  std::vector<int> coranks_;
  std::vector<Perm> cell_list_;
  std::vector<Residue> data_;
  std::vector<int> cells_;
};

/// Throws BudgetExceeded over the cap.
FlagVariety enumerate_flags(int d, const PrimeField& f, std::vector<int> coranks, const Budget& budget);

// ---------------------------------------------------------------------------

template <typename Fn>
void for_each_flag_in_cell(const Perm& pi, const PrimeField& f, Fn&& fn) {
  const int d = pi.degree();
  const int q = f.modulus();
  Matrix m = Matrix::Zero(d, d);
  std::vector<std::pair<int, int>> free;
  for (int i = 0; i < d; ++i) {
    m(i, pi(i)) = 1;
    for (int j = 0; j < i; ++j)
      if (pi(j) > pi(i)) free.emplace_back(i, pi(j));
  }
  std::vector<int> digits(free.size(), 0);
  while (true) {
    fn(static_cast<const Matrix&>(m));
    std::size_t k = free.size();
    bool carry = true;
    while (carry && k > 0) {
      --k;
      auto& slot = m(free[k].first, free[k].second);
      if (++digits[k] < q) {
        slot = static_cast<Residue>(digits[k]);
        carry = false;
      } else {
        digits[k] = 0;
        slot = 0;
      }
    }
    if (carry) return;
  }
}

template <typename Fn>
void for_each_flag(int d, const PrimeField& f, const std::vector<int>& coranks, const Budget& budget, Fn&& fn) {
  budget.check(d, f.modulus(), coranks);
  for (const Perm& pi : cell_perms(d, coranks)) for_each_flag_in_cell(pi, f, [&](const Matrix& m) { fn(m, pi); });
}

}  // namespace richkit
