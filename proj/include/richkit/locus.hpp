#pragma once

// Schubert, Richardson and multi-flag degeneracy loci as F_q point sets, and
// their Zariski tangent spaces.
//
// A Schubert term (sigma, F) imposes dim V^a cap F^b >= r^sigma(a,b) on the
// moving flag V. X_sigma(F) is one term, R_{sigma,tau}(P,Q) is two. The multi
// locus D_{sigma_1..sigma_l}(F; V_1..V_l) lives on tuples of complete flags and
// imposes dim F^a cap V_i^b >= r^{sigma_i}(a,b).

#include "richkit/enumerate.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace richkit {

enum class Conditions {
  /// Every (a, b) with a a corank of the moving flag.
  kFull,
  /// Only (a, b) in Ess(sigma).
  kEssential,
};

struct SchubertTerm {
  Perm sigma;
  Flag reference;
};

/// Fast relative-position evaluator against one fixed complete flag.
class PositionKernel {
 public:
  static constexpr int kMaxDim = 8;

  explicit PositionKernel(const Flag& f);
  /// Permutation sigma with dim V^a cap F^b = r^sigma(a,b), written into `out`.
  void assoc(MatrixView v, std::array<int, kMaxDim>& out) const;
  Perm assoc(MatrixView v) const;
  /// perm_index of assoc(v).
  int assoc_index(MatrixView v) const;

 private:
  int d_;
  PrimeField field_;
  Matrix ginv_;
  /// With G^{-1} a permutation matrix, column j of V G^{-1} is column col_[j] of V.
  std::vector<int> col_;
};

class LocusSpec {
 public:
  enum class Kind { kSchubert, kRichardson, kMulti };

  /// Throws std::invalid_argument when a permutation's essential set uses rows
  /// outside `coranks`, or on degree/field mismatch.
  static LocusSpec schubert(const Perm& sigma, const Flag& f, std::vector<int> coranks = {});
  static LocusSpec schubert(const NestOfSets& a, const Flag& f);
  static LocusSpec richardson(const Perm& sigma, const Perm& tau, const Flag& p, const Flag& q,
                              std::vector<int> coranks = {});
  static LocusSpec richardson(const NestOfSets& a, const NestOfSets& b, const Flag& p, const Flag& q);
  static LocusSpec multi(std::vector<Perm> sigmas, const Flag& f);

  Kind kind() const { return kind_; }
  const std::vector<SchubertTerm>& terms() const { return terms_; }
  /// Coranks of the moving flag(s).
  const std::vector<int>& coranks() const { return coranks_; }
  int dim() const { return d_; }
  const PrimeField& field() const { return terms_.front().reference.field(); }

  /// dim of the ambient variety minus the sum of coinversions.
  int expected_dim() const;
  /// e.g. "richardson sigma=2,3,0,1 tau=3,2,1,0".
  std::string describe() const;

 private:
  LocusSpec(Kind kind, std::vector<SchubertTerm> terms, std::vector<int> coranks);

  struct Prepared {
    PositionKernel kernel;
    RankTable rank;
    std::vector<Cell> ess;
  };

  friend bool contains(const LocusSpec&, MatrixView, Conditions);

  Kind kind_;
  int d_;
  std::vector<SchubertTerm> terms_;
  std::vector<int> coranks_;
  std::vector<Prepared> prepared_;
};

/// Membership of a moving flag with basis `v` (rows adapted to spec.coranks()).
/// Not defined for multi loci.
bool contains(const LocusSpec& spec, MatrixView v, Conditions mode);
inline bool contains(const LocusSpec& spec, MatrixView v) { return contains(spec, v, Conditions::kEssential); }
/// Tuple membership for multi loci, evaluated from explicit subspace intersections.
bool contains_tuple(const LocusSpec& spec, std::span<const Flag> v);

std::vector<std::size_t> locus_indices(const LocusSpec& spec, const FlagVariety& fv,
                                       Conditions mode = Conditions::kEssential);
std::vector<Flag> locus_points(const LocusSpec& spec, const FlagVariety& fv, Conditions mode = Conditions::kEssential);
std::vector<Flag> richardson_points(const Perm& sigma, const Perm& tau, const Flag& p, const Flag& q,
                                    const FlagVariety& fv);
/// Index tuples (into fv) of all points of a multi locus, in lexicographic order.
std::vector<std::vector<std::size_t>> multi_locus_points(const LocusSpec& spec, const FlagVariety& fv);

/// Joint relative positions of every complete flag V against the standard flag
/// and a second reference flag q: count(pi1, pi2) = #{V : assoc(V, standard) = pi1,
/// assoc(V, q) = pi2}. Streams the flag variety without storing it; cells are
/// dealt to `threads` workers round-robin and summed, so the result does not
/// depend on the thread count.
class PositionCensus {
 public:
  PositionCensus(int d, const Flag& q, const Budget& budget, int threads = 1);

  int dim() const { return d_; }
  std::uint64_t count(const Perm& pi1, const Perm& pi2) const;
  std::uint64_t total() const;
  /// |X_sigma(standard) cap X_tau(q)| for every pair, indexed by perm_index.
  std::vector<std::uint64_t> richardson_counts() const;

 private:
  int d_;
  std::size_t n_;
  std::vector<std::uint64_t> counts_;
};

struct TangentReport {
  Flag point;
  LocusSpec locus;
  int locus_dim = 0;
  int tangent_dim = 0;
  bool smooth = false;
};

/// Zariski tangent space of the scheme cut out by the essential-set minors, at
/// `point`. Throws std::invalid_argument if the point is not in the locus or the
/// spec is a multi locus.
TangentReport tangent_dim(const Flag& point, const LocusSpec& spec);

}  // namespace richkit
