#pragma once

// Flags over F_p stored through adapted bases.
//
// A flag in H = F_p^d is given by an invertible d x d matrix whose rows
// v_0, ..., v_{d-1} satisfy V^a = span(v_a, ..., v_{d-1}) for every listed
// corank a. Endomorphisms act on row vectors, v -> v * phi, and End H is
// identified with F_p^{d^2} through the row-major order of phi.

#include "richkit/exactla.hpp"
#include "richkit/perm.hpp"

#include <span>
#include <string>
#include <vector>

namespace richkit {

/// Coranks 0, 1, ..., d.
std::vector<int> complete_coranks(int d);

class Flag {
 public:
  /// Throws std::invalid_argument unless `basis` is invertible and the corank
  /// list runs 0 = i_0 < ... < i_s = d. An empty list means complete.
  Flag(Matrix basis, const PrimeField& f, std::vector<int> coranks = {});

  /// P^a = span(e_a, ..., e_{d-1}).
  static Flag standard(int d, const PrimeField& f);
  /// Q^b = span(e_0, ..., e_{d-1-b}); transverse to standard().
  static Flag reversed(int d, const PrimeField& f);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const PrimeField& field() const { return field_; }
  const std::vector<int>& coranks() const { return coranks_; }
  bool is_complete() const { return static_cast<int>(coranks_.size()) == dim() + 1; }
  const Matrix& basis() const { return basis_; }

  /// Codimension-a stratum; `a` must be a listed corank.
  Subspace stratum(int a) const;
  /// Start of the corank block containing basis row i.
  int block_start(int row) const;

  /// The unique adapted basis in normal form: leftmost pivots equal to 1,
  /// cleared in every row that may be reduced against the pivot row.
  Flag canonical() const;
  /// The flag with basis rows v_i * g.
  Flag transformed(const Matrix& g) const;

  /// Same strata (compared through canonical forms).
  friend bool operator==(const Flag& x, const Flag& y);

 private:
  Matrix basis_;
  PrimeField field_;
  std::vector<int> coranks_;
};

/// Column index of each basis row's contribution when the rows of `c` are fed
/// bottom-up into a leftmost-pivot echelon basis. For a coordinate matrix
/// c = V * G^{-1} this is the associated permutation of (V, G).
Perm pivot_permutation(const Matrix& c, const PrimeField& f);

/// dim V^a cap F^b = r^sigma(a,b) for the returned sigma; both flags complete.
Perm assoc_perm(const Flag& v, const Flag& f);
/// dim V^a cap F^b for every a in coranks(v) and b in [0,d]; other rows -1.
RankTable::Values intersection_dims(const Flag& v, const Flag& f);

/// (P, Q) with P standard and Q^b = span{e_j : s(j) >= b}, so assoc_perm(P, Q) = s.
std::pair<Flag, Flag> adapted_flags(const Perm& s, const PrimeField& f);

/// Endomorphisms preserving every stratum, as a subspace of F_p^{d^2}.
Subspace fix_space(const Flag& p);
/// d^2 - dim(Fix P + Fix Q).
int invfix_check(const Flag& p, const Flag& q);

/// The diagonal map End H -> prod End H / Fix P_i as a (sum codim) x d^2 matrix.
Matrix diagonal_deformation_map(std::span<const Flag> flags);
/// dim of the cokernel of diagonal_deformation_map.
int m_dim(std::span<const Flag> flags);

struct FirstOrderFamily {
  int base_tangent_dim = 0;
  std::vector<Flag> flags;
  /// deformations[t][i]: first-order motion of the adapted basis of flag i
  /// along tangent direction t, as a d x d matrix.
  std::vector<std::vector<Matrix>> deformations;
};

/// The base_tangent_dim x dim(M) matrix of T_x S -> M. Throws
/// std::invalid_argument on inconsistent dimensions.
Matrix delta_matrix(const FirstOrderFamily& fam);
/// rank(delta_matrix) == dim M. Smoothness of the base is the caller's assertion.
bool is_versal_at_point(const FirstOrderFamily& fam);

/// Matrix text format with an optional coranks= key for partial flags.
std::string format_flag(const Flag& flag);
/// Throws ParseError on malformed text and std::invalid_argument if the rows are
/// not a basis.
Flag parse_flag(const std::string& text);
Flag read_flag_file(const std::string& path);

}  // namespace richkit
