#pragma once

// Exact dense linear algebra over prime fields F_p, 2 <= p <= 251.
//
// Matrices are Eigen dense matrices of residues in [0, p). Vectors are rows;
// a matrix viewed as a linear map acts on column vectors, F^cols -> F^rows,
// so kernel() is the right null space and cokernel_dim() is rows - rank.

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <string>

namespace richkit {

using Residue = std::uint8_t;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using DenseRow = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Matrix = DenseMatrix<Residue>;
using RowVector = DenseRow<Residue>;
/// Read-only view accepting Matrix, Map or contiguous blocks.
using MatrixView = Eigen::Ref<const Matrix>;

class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is a prime in [2, 251].
  explicit PrimeField(int p);

  int modulus() const { return p_; }

  Residue reduce(long long x) const {
    long long r = x % p_;
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    int s = a + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const {
    int s = a - b;
    return static_cast<Residue>(s < 0 ? s + p_ : s);
  }
  Residue neg(Residue a) const { return static_cast<Residue>(a ? p_ - a : 0); }
  Residue mul(Residue a, Residue b) const { return static_cast<Residue>((a * b) % p_); }
  /// Undefined for a == 0.
  Residue inv(Residue a) const { return (*inverses_)[a]; }

  friend bool operator==(const PrimeField& x, const PrimeField& y) { return x.p_ == y.p_; }

 private:
  int p_;
  const std::array<Residue, 256>* inverses_;
};

bool is_prime(int n);

/// Builds a matrix from integers, reducing each mod p.
Matrix make_matrix(int rows, int cols, std::initializer_list<long long> entries, const PrimeField& f);
Matrix identity_matrix(int n);

/// Unique reduced row-echelon form (pivots 1, zero rows dropped only by Subspace).
Matrix rref(const Matrix& m, const PrimeField& f);
int rank(const Matrix& m, const PrimeField& f);
Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& f);
/// Throws std::invalid_argument if m is singular or not square.
Matrix inverse(const Matrix& m, const PrimeField& f);
Matrix stack(const Matrix& top, const Matrix& bottom);
bool is_reduced(const Matrix& m, const PrimeField& f);

/// A subspace of F_p^n stored as its RREF basis without zero rows, so equal
/// subspaces have equal representations.
class Subspace {
 public:
  Subspace(int ambient_dim, const PrimeField& f);
  /// Row space of `spanning`.
  Subspace(const Matrix& spanning, const PrimeField& f);

  static Subspace full(int ambient_dim, const PrimeField& f);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.rows()); }
  const Matrix& basis() const { return basis_; }
  const PrimeField& field() const { return field_; }

  bool contains(const RowVector& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.field_ == y.field_ && x.ambient_ == y.ambient_ && x.basis_.rows() == y.basis_.rows() &&
           x.basis_ == y.basis_;
  }

  std::size_t hash() const;

 private:
  int ambient_;
  PrimeField field_;
  Matrix basis_;
};

/// Right null space {x : m x = 0} as a subspace of F^cols.
Subspace kernel(const Matrix& m, const PrimeField& f);
int cokernel_dim(const Matrix& m, const PrimeField& f);
/// Vectors y with <y, u> = 0 for all u in s.
Subspace annihilator(const Subspace& s);
/// Throws std::invalid_argument on ambient or field mismatch.
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);

/// Header "d=<cols> p=<prime>" then one space-separated row per line.
std::string format_matrix(const Matrix& m, const PrimeField& f);

struct ParsedMatrix {
  Matrix matrix;
  int modulus = 0;
  /// Extra key=value pairs on the header line, e.g. "coranks=0,2,5".
  std::string coranks;
};

/// Throws ParseError with line and column on malformed input.
ParsedMatrix parse_matrix(std::istream& in);
ParsedMatrix parse_matrix_text(const std::string& text);

}  // namespace richkit

template <>
struct std::hash<richkit::Subspace> {
  std::size_t operator()(const richkit::Subspace& s) const noexcept { return s.hash(); }
};
