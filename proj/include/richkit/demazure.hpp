#pragma once

// Demazure product on S_d.
//
// star(t, p) is the product written t * p in the literature on 0-Hecke monoids:
// the fold of star_simple over a reduced word of p, starting from t. The
// max-plus formula on rank tables is an independent second route.

#include "richkit/perm.hpp"

#include <vector>

namespace richkit {

enum class ReducedWordStrategy {
  /// Left-to-right bubble sort passes over the one-line word.
  kBubble,
  /// Repeatedly move the largest misplaced value to its final position.
  kSelection,
};

/// Indices s_1, ..., s_k with p = s_1 * s_2 * ... * s_k and k = inv(p).
std::vector<int> reduced_word(const Perm& p, ReducedWordStrategy strategy = ReducedWordStrategy::kBubble);

/// t if inv(t * s) < inv(t), else t * s. Throws std::out_of_range unless 0 <= s < d-1.
Perm star_simple(const Perm& t, int s);

Perm star(const Perm& t, const Perm& p, ReducedWordStrategy strategy = ReducedWordStrategy::kBubble);

/// r(a,b) = max_k ( r^p(a,k) + r^t(k,b) - (d-k) ), clamped at 0, then read back
/// as a permutation. Throws std::logic_error if the table is not a rank table.
Perm star_via_rank_formula(const Perm& t, const Perm& p);

}  // namespace richkit
