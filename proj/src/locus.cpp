#include "richkit/locus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace richkit {

PositionKernel::PositionKernel(const Flag& f) : d_(f.dim()), field_(f.field()), ginv_(inverse(f.basis(), f.field())) {
  if (!f.is_complete()) throw std::invalid_argument("reference flags must be complete");
  if (d_ > kMaxDim) throw std::invalid_argument("PositionKernel supports d <= 8");
  std::vector<int> col(static_cast<std::size_t>(d_), -1);
  for (int j = 0; j < d_; ++j) {
    int ones = 0;
    for (int i = 0; i < d_; ++i) {
      if (ginv_(i, j) == 1) {
        ++ones;
        col[static_cast<std::size_t>(j)] = i;
      } else if (ginv_(i, j) != 0) {
        ones = 2;
      }
    }
    if (ones != 1) return;
  }
  col_ = std::move(col);
}

void PositionKernel::assoc(MatrixView v, std::array<int, kMaxDim>& out) const {
  const int d = d_;
  const int p = field_.modulus();
  Residue c[kMaxDim][kMaxDim];
  if (!col_.empty()) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) c[i][j] = v(i, col_[static_cast<std::size_t>(j)]);
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        int s = 0;
        for (int k = 0; k < d; ++k) s += v(i, k) * ginv_(k, j);
        c[i][j] = static_cast<Residue>(s % p);
      }
  }
  // Bottom-up insertion into an echelon basis keyed by leftmost column.
  Residue echelon[kMaxDim][kMaxDim];
  int row_of[kMaxDim];
  for (int j = 0; j < d; ++j) row_of[j] = -1;
  int used = 0;
  for (int a = d - 1; a >= 0; --a) {
    Residue* x = c[a];
    while (true) {
      int lead = 0;
      while (lead < d && x[lead] == 0) ++lead;
      if (lead == d) throw std::invalid_argument("basis rows are dependent");
      const int e = row_of[lead];
      if (e < 0) {
        const Residue s = field_.inv(x[lead]);
        for (int k = lead; k < d; ++k) echelon[used][k] = field_.mul(x[k], s);
        row_of[lead] = used++;
        out[static_cast<std::size_t>(a)] = lead;
        break;
      }
      const int m = p - x[lead];
      for (int k = lead; k < d; ++k) x[k] = static_cast<Residue>((x[k] + m * echelon[e][k]) % p);
    }
  }
}

Perm PositionKernel::assoc(MatrixView v) const {
  std::array<int, kMaxDim> w{};
  assoc(v, w);
  return Perm(std::vector<int>(w.begin(), w.begin() + d_));
}

int PositionKernel::assoc_index(MatrixView v) const {
  std::array<int, kMaxDim> w{};
  assoc(v, w);
  int index = 0;
  for (int i = 0; i < d_; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < d_; ++j) smaller += w[static_cast<std::size_t>(j)] < w[static_cast<std::size_t>(i)];
    index = index * (d_ - i) + smaller;
  }
  return index;
}

LocusSpec::LocusSpec(Kind kind, std::vector<SchubertTerm> terms, std::vector<int> coranks)
    : kind_(kind), d_(0), terms_(std::move(terms)), coranks_(std::move(coranks)) {
  if (terms_.empty()) throw std::invalid_argument("a locus needs at least one condition");
  d_ = terms_.front().reference.dim();
  if (coranks_.empty()) coranks_ = complete_coranks(d_);
  for (const SchubertTerm& t : terms_) {
    if (t.sigma.degree() != d_ || t.reference.dim() != d_)
      throw std::invalid_argument("permutation and flag degrees must agree");
    if (!(t.reference.field() == terms_.front().reference.field()))
      throw std::invalid_argument("reference flags are over different fields");
    if (!ess_rows_compatible(t.sigma, coranks_))
      throw std::invalid_argument("Ess(" + format_perm(t.sigma) + ") uses rows outside the coranks");
    prepared_.push_back({PositionKernel(t.reference), rank_table(t.sigma), essential_set(t.sigma)});
  }
  if (kind_ == Kind::kMulti && coranks_ != complete_coranks(d_))
    throw std::invalid_argument("multi loci use complete moving flags");
}

LocusSpec LocusSpec::schubert(const Perm& sigma, const Flag& f, std::vector<int> coranks) {
  return LocusSpec(Kind::kSchubert, {{sigma, f}}, std::move(coranks));
}

LocusSpec LocusSpec::schubert(const NestOfSets& a, const Flag& f) {
  return schubert(decreasing_completion(a), f, a.coranks());
}

LocusSpec LocusSpec::richardson(const Perm& sigma, const Perm& tau, const Flag& p, const Flag& q,
                                std::vector<int> coranks) {
  return LocusSpec(Kind::kRichardson, {{sigma, p}, {tau, q}}, std::move(coranks));
}

LocusSpec LocusSpec::richardson(const NestOfSets& a, const NestOfSets& b, const Flag& p, const Flag& q) {
  if (a.coranks() != b.coranks()) throw std::invalid_argument("nests must have the same coranks");
  return richardson(decreasing_completion(a), decreasing_completion(b), p, q, a.coranks());
}

LocusSpec LocusSpec::multi(std::vector<Perm> sigmas, const Flag& f) {
  std::vector<SchubertTerm> terms;
  for (Perm& s : sigmas) terms.push_back({std::move(s), f});
  return LocusSpec(Kind::kMulti, std::move(terms), {});
}

int LocusSpec::expected_dim() const {
  int n = flag_variety_dim(d_, coranks_);
  if (kind_ == Kind::kMulti) n *= static_cast<int>(terms_.size());
  for (const SchubertTerm& t : terms_) n -= coinversions(t.sigma);
  return n;
}

std::string LocusSpec::describe() const {
  std::ostringstream out;
  static const char* names[] = {"schubert", "richardson", "multi"};
  out << names[static_cast<int>(kind_)];
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (kind_ == Kind::kRichardson) out << (i == 0 ? " sigma=" : " tau=");
    else out << " sigma" << (kind_ == Kind::kMulti ? std::to_string(i + 1) : std::string()) << "=";
    out << format_perm(terms_[i].sigma);
  }
  if (coranks_ != complete_coranks(d_)) {
    out << " coranks=";
    for (std::size_t j = 0; j < coranks_.size(); ++j) out << (j ? "," : "") << coranks_[j];
  }
  return out.str();
}

bool contains(const LocusSpec& spec, MatrixView v, Conditions mode) {
  if (spec.kind() == LocusSpec::Kind::kMulti) throw std::invalid_argument("use contains_tuple for multi loci");
  const int d = spec.dim();
  std::array<int, PositionKernel::kMaxDim> w{};
  for (const auto& t : spec.prepared_) {
    t.kernel.assoc(v, w);
    // dim V^a cap F^b = #{a' >= a : w(a') >= b}; evaluated only where needed.
    auto dim_at = [&](int a, int b) {
      int n = 0;
      for (int x = a; x < d; ++x) n += w[static_cast<std::size_t>(x)] >= b;
      return n;
    };
    if (mode == Conditions::kEssential) {
      for (const auto& [a, b] : t.ess)
        if (dim_at(a, b) < t.rank(a, b)) return false;
    } else {
      for (int a : spec.coranks())
        for (int b = 0; b < d; ++b)
          if (dim_at(a, b) < t.rank(a, b)) return false;
    }
  }
  return true;
}

namespace {

// dims(a, b) = dim F^a cap V^b from explicit subspace intersections.
RankTable::Values reference_dims(const Flag& f, const Flag& v) {
  const int d = f.dim();
  RankTable::Values t = RankTable::Values::Zero(d + 1, d + 1);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) t(a, b) = intersect(f.stratum(a), v.stratum(b)).dim();
  return t;
}

bool meets(const RankTable::Values& dims, const Perm& sigma) {
  const RankTable r = rank_table(sigma);
  return (dims.array() >= r.values().array()).all();
}

}  // namespace

bool contains_tuple(const LocusSpec& spec, std::span<const Flag> v) {
  if (spec.kind() != LocusSpec::Kind::kMulti) throw std::invalid_argument("contains_tuple needs a multi locus");
  if (v.size() != spec.terms().size()) throw std::invalid_argument("tuple length must match the number of flags");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const SchubertTerm& t = spec.terms()[i];
    if (!v[i].is_complete() || v[i].dim() != spec.dim()) throw std::invalid_argument("tuple entries must be complete");
    if (!meets(reference_dims(t.reference, v[i]), t.sigma)) return false;
  }
  return true;
}

std::vector<std::size_t> locus_indices(const LocusSpec& spec, const FlagVariety& fv, Conditions mode) {
  if (fv.dim() != spec.dim() || !(fv.field() == spec.field()) || fv.coranks() != spec.coranks())
    throw std::invalid_argument("flag variety does not match the locus");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fv.size(); ++i)
    if (contains(spec, fv.basis(i), mode)) out.push_back(i);
  return out;
}

std::vector<Flag> locus_points(const LocusSpec& spec, const FlagVariety& fv, Conditions mode) {
  std::vector<Flag> out;
  for (std::size_t i : locus_indices(spec, fv, mode)) out.push_back(fv.point(i));
  return out;
}

std::vector<Flag> richardson_points(const Perm& sigma, const Perm& tau, const Flag& p, const Flag& q,
                                    const FlagVariety& fv) {
  return locus_points(LocusSpec::richardson(sigma, tau, p, q, fv.coranks()), fv);
}

std::vector<std::vector<std::size_t>> multi_locus_points(const LocusSpec& spec, const FlagVariety& fv) {
  if (spec.kind() != LocusSpec::Kind::kMulti) throw std::invalid_argument("multi_locus_points needs a multi locus");
  if (fv.dim() != spec.dim() || !(fv.field() == spec.field()) || fv.coranks() != complete_coranks(spec.dim()))
    throw std::invalid_argument("flag variety does not match the locus");
  const std::size_t ell = spec.terms().size();
  const Flag& ref = spec.terms().front().reference;
  std::vector<RankTable::Values> dims;
  dims.reserve(fv.size());
  for (std::size_t i = 0; i < fv.size(); ++i) dims.push_back(reference_dims(ref, fv.point(i)));

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(ell, 0);
  const std::size_t n = fv.size();
  if (n == 0) return out;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < ell; ++i) ok = meets(dims[idx[i]], spec.terms()[i].sigma);
    if (ok) out.push_back(idx);
    std::size_t k = ell;
    while (k > 0 && ++idx[k - 1] == n) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

namespace {

Residue det_mod(std::vector<std::vector<Residue>> m, const PrimeField& f) {
  const std::size_t n = m.size();
  Residue det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    const Residue inv = f.inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Residue x = f.mul(m[r][c], inv);
      if (x == 0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] = f.sub(m[r][k], f.mul(x, m[c][k]));
    }
  }
  return det;
}

// All k-subsets of [lo, hi) in lexicographic order.
std::vector<std::vector<int>> subsets(int lo, int hi, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = start; x < hi; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, lo);
  return out;
}

}  // namespace

TangentReport tangent_dim(const Flag& point, const LocusSpec& spec) {
  if (spec.kind() == LocusSpec::Kind::kMulti) throw std::invalid_argument("tangent_dim is defined for one moving flag");
  if (point.dim() != spec.dim() || !(point.field() == spec.field()) || point.coranks() != spec.coranks())
    throw std::invalid_argument("point does not live in the locus's flag variety");
  if (!contains(spec, point.basis(), Conditions::kFull))
    throw std::invalid_argument("point is not in the locus " + spec.describe());

  const int d = spec.dim();
  const PrimeField& f = spec.field();
  // Unknown: the first-order motion W of the basis, indexed W(i, k) -> i * d + k.
  std::vector<RowVector> rows;
  for (const SchubertTerm& t : spec.terms()) {
    const Matrix ginv = inverse(t.reference.basis(), f);
    const Matrix c = multiply(point.basis(), ginv, f);
    const RankTable r = rank_table(t.sigma);
    for (const auto& [a, b] : essential_set(t.sigma)) {
      // dim V^a cap F^b >= r  <=>  rank C[a.., ..b) <= (d - a) - r.
      const int k = (d - a) - r(a, b) + 1;
      if (k > d - a || k > b) continue;
      for (const auto& I : subsets(a, d, k))
        for (const auto& J : subsets(0, b, k)) {
          RowVector row = RowVector::Zero(d * d);
          bool any = false;
          for (int ii = 0; ii < k; ++ii)
            for (int jj = 0; jj < k; ++jj) {
              std::vector<std::vector<Residue>> sub;
              for (int x = 0; x < k; ++x) {
                if (x == ii) continue;
                std::vector<Residue> line;
                for (int y = 0; y < k; ++y)
                  if (y != jj) line.push_back(c(I[static_cast<std::size_t>(x)], J[static_cast<std::size_t>(y)]));
                sub.push_back(std::move(line));
              }
              Residue cof = det_mod(std::move(sub), f);
              if ((ii + jj) % 2) cof = f.neg(cof);
              if (cof == 0) continue;
              any = true;
              // d/de of C(i, j) along W is sum_k' W(i, k') Ginv(k', j).
              const int i = I[static_cast<std::size_t>(ii)];
              const int j = J[static_cast<std::size_t>(jj)];
              for (int kp = 0; kp < d; ++kp)
                row(i * d + kp) = f.add(row(i * d + kp), f.mul(cof, ginv(kp, j)));
            }
          if (any) rows.push_back(std::move(row));
        }
    }
  }
  Matrix system(static_cast<Eigen::Index>(rows.size()), d * d);
  for (std::size_t i = 0; i < rows.size(); ++i) system.row(static_cast<Eigen::Index>(i)) = rows[i];
  int redundancy = 0;
  for (int i = 0; i < d; ++i) redundancy += d - point.block_start(i);
  const int rk = rows.empty() ? 0 : rank(system, f);

  TangentReport rep{point, spec, spec.expected_dim(), d * d - rk - redundancy, false};
  rep.smooth = rep.tangent_dim == rep.locus_dim;
  return rep;
}

}  // namespace richkit

namespace richkit {

PositionCensus::PositionCensus(int d, const Flag& q, const Budget& budget, int threads)
    : d_(d), n_(all_perms(d).size()), counts_(n_ * n_, 0) {
  if (q.dim() != d || !q.is_complete()) throw std::invalid_argument("census needs a complete reference flag of degree d");
  const std::vector<int> coranks = complete_coranks(d);
  budget.check(d, q.field().modulus(), coranks);
  const std::vector<Perm> cells = cell_perms(d, coranks);
  const PositionKernel kernel(q);
  threads = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));

  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(threads), std::vector<std::uint64_t>(n_ * n_, 0));
  auto work = [&](int t) {
    auto& part = parts[static_cast<std::size_t>(t)];
    for (std::size_t c = static_cast<std::size_t>(t); c < cells.size(); c += static_cast<std::size_t>(threads)) {
      const std::size_t row = static_cast<std::size_t>(perm_index(cells[c])) * n_;
      for_each_flag_in_cell(cells[c], q.field(),
                            [&](const Matrix& m) { ++part[row + static_cast<std::size_t>(kernel.assoc_index(m))]; });
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& part : parts)
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += part[i];
}

std::uint64_t PositionCensus::count(const Perm& pi1, const Perm& pi2) const {
  return counts_[static_cast<std::size_t>(perm_index(pi1)) * n_ + static_cast<std::size_t>(perm_index(pi2))];
}

std::uint64_t PositionCensus::total() const {
  std::uint64_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

std::vector<std::uint64_t> PositionCensus::richardson_counts() const {
  const std::vector<Perm> perms = all_perms(d_);
  std::vector<char> leq(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) leq[i * n_ + j] = bruhat_leq(perms[i], perms[j]);
  // Down-set sums in the first index, then in the second.
  std::vector<std::uint64_t> a(n_ * n_, 0), r(n_ * n_, 0);
  for (std::size_t s = 0; s < n_; ++s)
    for (std::size_t p1 = 0; p1 < n_; ++p1)
      if (leq[p1 * n_ + s])
        for (std::size_t p2 = 0; p2 < n_; ++p2) a[s * n_ + p2] += counts_[p1 * n_ + p2];
  for (std::size_t s = 0; s < n_; ++s)
    for (std::size_t t = 0; t < n_; ++t)
      for (std::size_t p2 = 0; p2 < n_; ++p2)
        if (leq[p2 * n_ + t]) r[s * n_ + t] += a[s * n_ + p2];
  return r;
}

}  // namespace richkit
