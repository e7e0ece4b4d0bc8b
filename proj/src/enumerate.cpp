#include "richkit/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

namespace richkit {

Budget Budget::from_env() {
  Budget b;
  if (const char* env = std::getenv("RICHKIT_BUDGET"); env != nullptr && *env != '\0') {
    const std::string text(env);
    if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 18)
      throw std::invalid_argument("RICHKIT_BUDGET must be a positive integer, got '" + text + "'");
    b.max_points = std::stoull(text);
  }
  return b;
}

namespace {

void check_coranks(int d, const std::vector<int>& coranks) {
  if (d < 1) throw std::invalid_argument("flag varieties need d >= 1");
  if (coranks.size() < 2 || coranks.front() != 0 || coranks.back() != d)
    throw std::invalid_argument("coranks must run from 0 to d");
  for (std::size_t j = 0; j + 1 < coranks.size(); ++j)
    if (coranks[j] >= coranks[j + 1]) throw std::invalid_argument("coranks must be strictly increasing");
}

}  // namespace

void Budget::check(int d, int q, const std::vector<int>& coranks) const {
  check_coranks(d, coranks);
  if (d > max_degree)
    throw BudgetExceeded("d=" + std::to_string(d) + " is above the enumeration limit d<=" + std::to_string(max_degree),
                         static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(max_degree));
  const int n = flag_variety_dim(d, coranks);
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= static_cast<std::uint64_t>(q);
    if (size > max_points)
      throw BudgetExceeded("q^" + std::to_string(n) + " with q=" + std::to_string(q) + " exceeds the point budget " +
                               std::to_string(max_points),
                           size, max_points);
  }
}

int flag_variety_dim(int d, const std::vector<int>& coranks) {
  check_coranks(d, coranks);
  std::int64_t n = binomial(d, 2);
  for (std::size_t j = 0; j + 1 < coranks.size(); ++j) n -= binomial(coranks[j + 1] - coranks[j], 2);
  return static_cast<int>(n);
}

std::uint64_t flag_count(int d, int q, const std::vector<int>& coranks) {
  check_coranks(d, coranks);
  // Gaussian binomials by Pascal's rule [n,k] = [n-1,k-1] + q^k [n-1,k].
  std::vector<std::vector<std::uint64_t>> g(static_cast<std::size_t>(d) + 1);
  for (int n = 0; n <= d; ++n) {
    auto& row = g[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n) + 1, 1);
    std::uint64_t qk = 1;
    for (int k = 1; k < n; ++k) {
      qk *= static_cast<std::uint64_t>(q);
      const auto& up = g[static_cast<std::size_t>(n) - 1];
      row[static_cast<std::size_t>(k)] = up[static_cast<std::size_t>(k) - 1] + qk * up[static_cast<std::size_t>(k)];
    }
  }
  std::uint64_t total = 1;
  int placed = 0;
  for (std::size_t j = 0; j + 1 < coranks.size(); ++j) {
    const int k = coranks[j + 1] - coranks[j];
    placed += k;
    total *= g[static_cast<std::size_t>(placed)][static_cast<std::size_t>(k)];
  }
  return total;
}

std::vector<Perm> cell_perms(int d, const std::vector<int>& coranks) {
  check_coranks(d, coranks);
  std::vector<Perm> out;
  for (const Perm& p : all_perms(d)) {
    bool ok = true;
    for (std::size_t j = 0; ok && j + 1 < coranks.size(); ++j)
      for (int a = coranks[j]; ok && a + 1 < coranks[j + 1]; ++a) ok = p(a) < p(a + 1);
    if (ok) out.push_back(p);
  }
  return out;
}

FlagVariety::FlagVariety(int d, const PrimeField& f, std::vector<int> coranks)
    : d_(d), field_(f), coranks_(std::move(coranks)), cell_list_(cell_perms(d, coranks_)) {}

void FlagVariety::push_back(const Matrix& basis, int cell) {
  data_.insert(data_.end(), basis.data(), basis.data() + basis.size());
  cells_.push_back(cell);
}

FlagVariety enumerate_flags(int d, const PrimeField& f, std::vector<int> coranks, const Budget& budget) {
  if (coranks.empty()) coranks = complete_coranks(d);
  budget.check(d, f.modulus(), coranks);
  FlagVariety fv(d, f, coranks);
  int cell = -1;
  Perm last;
  for_each_flag(d, f, coranks, budget, [&](const Matrix& m, const Perm& pi) {
    if (pi != last) {
      last = pi;
      ++cell;
    }
    fv.push_back(m, cell);
  });
  return fv;
}

}  // namespace richkit
