#include "richkit/demazure.hpp"

#include <algorithm>
#include <stdexcept>

namespace richkit {

std::vector<int> reduced_word(const Perm& p, ReducedWordStrategy strategy) {
  // Sorting p to the identity by right multiplications p * s_{j1} * ... * s_{jk} = id,
  // each removing one inversion, gives p = s_{jk} * ... * s_{j1}.
  std::vector<int> w(p.word().begin(), p.word().end());
  const int d = p.degree();
  std::vector<int> swaps;
  if (strategy == ReducedWordStrategy::kBubble) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i + 1 < d; ++i) {
        if (w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(i + 1)]) {
          std::swap(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i + 1)]);
          swaps.push_back(i);
          changed = true;
        }
      }
    }
  } else {
    for (int v = d - 1; v >= 0; --v) {
      int pos = static_cast<int>(std::find(w.begin(), w.end(), v) - w.begin());
      for (; pos < v; ++pos) {
        std::swap(w[static_cast<std::size_t>(pos)], w[static_cast<std::size_t>(pos + 1)]);
        swaps.push_back(pos);
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

Perm star_simple(const Perm& t, int s) {
  if (s < 0 || s + 1 >= t.degree()) {
    throw std::out_of_range("simple transposition index " + std::to_string(s) + " out of range");
  }
  // inv(t s) < inv(t) exactly when positions s, s+1 of t are a descent.
  return t(s) > t(s + 1) ? t : t.times_simple(s);
}

Perm star(const Perm& t, const Perm& p, ReducedWordStrategy strategy) {
  if (t.degree() != p.degree()) throw std::invalid_argument("degree mismatch in Demazure product");
  Perm out = t;
  for (int s : reduced_word(p, strategy)) out = star_simple(out, s);
  return out;
}

Perm star_via_rank_formula(const Perm& t, const Perm& p) {
  if (t.degree() != p.degree()) throw std::invalid_argument("degree mismatch in Demazure product");
  const int d = p.degree();
  const RankTable rp = rank_table(p);
  const RankTable rt = rank_table(t);
  RankTable::Values v = RankTable::Values::Zero(d + 1, d + 1);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      int best = 0;
      for (int k = 0; k <= d; ++k) best = std::max(best, rp(a, k) + rt(k, b) - (d - k));
      v(a, b) = best;
    }
  }
  try {
    return perm_from_rank_table(RankTable(std::move(v)));
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("max-plus Demazure table is not a rank table: ") + e.what());
  }
}

}  // namespace richkit
