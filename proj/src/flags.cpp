#include "richkit/flags.hpp"

#include "richkit/errors.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace richkit {

std::vector<int> complete_coranks(int d) {
  std::vector<int> c(static_cast<std::size_t>(d) + 1);
  std::iota(c.begin(), c.end(), 0);
  return c;
}

Flag::Flag(Matrix basis, const PrimeField& f, std::vector<int> coranks)
    : basis_(std::move(basis)), field_(f), coranks_(std::move(coranks)) {
  const int d = static_cast<int>(basis_.rows());
  if (d < 1 || basis_.cols() != d) throw std::invalid_argument("flag basis must be a square d x d matrix");
  if (!is_reduced(basis_, field_)) throw std::invalid_argument("flag basis entries must be reduced mod p");
  if (rank(basis_, field_) != d) throw std::invalid_argument("flag basis is not of full rank");
  if (coranks_.empty()) coranks_ = complete_coranks(d);
  if (coranks_.front() != 0 || coranks_.back() != d)
    throw std::invalid_argument("flag coranks must start at 0 and end at d");
  for (std::size_t j = 0; j + 1 < coranks_.size(); ++j)
    if (coranks_[j] >= coranks_[j + 1]) throw std::invalid_argument("flag coranks must be strictly increasing");
}

Flag Flag::standard(int d, const PrimeField& f) { return Flag(identity_matrix(d), f); }

Flag Flag::reversed(int d, const PrimeField& f) {
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, d - 1 - i) = 1;
  return Flag(std::move(m), f);
}

Subspace Flag::stratum(int a) const {
  bool listed = false;
  for (int c : coranks_) listed = listed || c == a;
  if (!listed) throw std::invalid_argument("stratum " + std::to_string(a) + " is not part of this flag");
  if (a == dim()) return Subspace(dim(), field_);
  return Subspace(Matrix(basis_.bottomRows(dim() - a)), field_);
}

int Flag::block_start(int row) const {
  int start = 0;
  for (int c : coranks_)
    if (c <= row) start = c;
  return start;
}

Flag Flag::canonical() const {
  const int d = dim();
  Matrix out(d, d);
  // (row index, pivot column) of rows already in normal form, latest block first.
  std::vector<std::pair<int, int>> done;
  for (std::size_t j = coranks_.size() - 1; j-- > 0;) {
    const int lo = coranks_[j];
    const int hi = coranks_[j + 1];
    Matrix block = basis_.middleRows(lo, hi - lo);
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      for (const auto& [row, piv] : done) {
        const Residue x = block(r, piv);
        if (x == 0) continue;
        for (int c = 0; c < d; ++c) block(r, c) = field_.sub(block(r, c), field_.mul(x, out(row, c)));
      }
    }
    block = rref(block, field_);
    std::vector<std::pair<int, int>> added;
    for (int r = 0; r < hi - lo; ++r) {
      out.row(lo + r) = block.row(r);
      int piv = 0;
      while (block(r, piv) == 0) ++piv;
      added.emplace_back(lo + r, piv);
    }
    // A row may be nonzero only at pivots of earlier blocks, so reduction
    // against later blocks has to happen first.
    done.insert(done.end(), added.begin(), added.end());
  }
  return Flag(std::move(out), field_, coranks_);
}

Flag Flag::transformed(const Matrix& g) const { return Flag(multiply(basis_, g, field_), field_, coranks_); }

bool operator==(const Flag& x, const Flag& y) {
  if (!(x.field_ == y.field_) || x.coranks_ != y.coranks_ || x.dim() != y.dim()) return false;
  return x.canonical().basis_ == y.canonical().basis_;
}

Perm pivot_permutation(const Matrix& c, const PrimeField& f) {
  const int d = static_cast<int>(c.rows());
  std::vector<int> word(static_cast<std::size_t>(d));
  Matrix echelon = Matrix::Zero(d, d);
  std::vector<int> row_of_pivot(static_cast<std::size_t>(d), -1);
  int used = 0;
  for (int a = d - 1; a >= 0; --a) {
    RowVector v = c.row(a);
    while (true) {
      int lead = 0;
      while (lead < d && v(lead) == 0) ++lead;
      if (lead == d) throw std::invalid_argument("pivot_permutation: rows are dependent");
      const int e = row_of_pivot[static_cast<std::size_t>(lead)];
      if (e < 0) {
        const Residue s = f.inv(v(lead));
        for (int k = lead; k < d; ++k) echelon(used, k) = f.mul(v(k), s);
        row_of_pivot[static_cast<std::size_t>(lead)] = used++;
        word[static_cast<std::size_t>(a)] = lead;
        break;
      }
      const Residue x = v(lead);
      for (int k = lead; k < d; ++k) v(k) = f.sub(v(k), f.mul(x, echelon(e, k)));
    }
  }
  return Perm(std::move(word));
}

namespace {

void check_same_space(const Flag& v, const Flag& f) {
  if (v.dim() != f.dim()) throw std::invalid_argument("flags live in different ambient spaces");
  if (!(v.field() == f.field())) throw std::invalid_argument("flags are over different fields");
}

}  // namespace

Perm assoc_perm(const Flag& v, const Flag& f) {
  check_same_space(v, f);
  if (!v.is_complete() || !f.is_complete()) throw std::invalid_argument("assoc_perm needs complete flags");
  return pivot_permutation(multiply(v.basis(), inverse(f.basis(), f.field()), f.field()), f.field());
}

RankTable::Values intersection_dims(const Flag& v, const Flag& f) {
  check_same_space(v, f);
  if (!f.is_complete()) throw std::invalid_argument("reference flag must be complete");
  const int d = v.dim();
  const Perm s = pivot_permutation(multiply(v.basis(), inverse(f.basis(), f.field()), f.field()), f.field());
  const RankTable r = rank_table(s);
  RankTable::Values out = RankTable::Values::Constant(d + 1, d + 1, -1);
  for (int a : v.coranks()) out.row(a) = r.values().row(a);
  return out;
}

std::pair<Flag, Flag> adapted_flags(const Perm& s, const PrimeField& f) {
  const int d = s.degree();
  Matrix q = Matrix::Zero(d, d);
  const Perm inv = s.inverse();
  for (int b = 0; b < d; ++b) q(b, inv(b)) = 1;
  return {Flag::standard(d, f), Flag(std::move(q), f)};
}

Subspace fix_space(const Flag& p) {
  const int d = p.dim();
  const PrimeField& f = p.field();
  // phi preserves every stratum iff v_j * phi lies in the stratum of v_j's block.
  std::vector<RowVector> rows;
  for (int j = 0; j < d; ++j) {
    const int a = p.block_start(j);
    if (a == 0) continue;
    const Subspace ann = annihilator(p.stratum(a));
    for (Eigen::Index k = 0; k < ann.basis().rows(); ++k) {
      RowVector cond = RowVector::Zero(d * d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) cond(r * d + c) = f.mul(p.basis()(j, r), ann.basis()(k, c));
      rows.push_back(std::move(cond));
    }
  }
  Matrix system(static_cast<Eigen::Index>(rows.size()), d * d);
  for (std::size_t i = 0; i < rows.size(); ++i) system.row(static_cast<Eigen::Index>(i)) = rows[i];
  if (rows.empty()) return Subspace::full(d * d, f);
  return kernel(system, f);
}

int invfix_check(const Flag& p, const Flag& q) {
  check_same_space(p, q);
  const int d = p.dim();
  return d * d - sum(fix_space(p), fix_space(q)).dim();
}

Matrix diagonal_deformation_map(std::span<const Flag> flags) {
  if (flags.empty()) throw std::invalid_argument("need at least one flag");
  const int d = flags.front().dim();
  Matrix out(0, d * d);
  for (const Flag& p : flags) {
    check_same_space(p, flags.front());
    // Functionals vanishing on Fix P give coordinates on End H / Fix P.
    out = stack(out, annihilator(fix_space(p)).basis());
  }
  return out;
}

int m_dim(std::span<const Flag> flags) {
  const Matrix map = diagonal_deformation_map(flags);
  return cokernel_dim(map, flags.front().field());
}

Matrix delta_matrix(const FirstOrderFamily& fam) {
  if (fam.flags.empty()) throw std::invalid_argument("family needs at least one flag");
  if (static_cast<int>(fam.deformations.size()) != fam.base_tangent_dim)
    throw std::invalid_argument("need one deformation tuple per tangent direction");
  const Flag& first = fam.flags.front();
  const int d = first.dim();
  const PrimeField& f = first.field();
  for (const Flag& p : fam.flags) {
    check_same_space(p, first);
    if (!p.is_complete()) throw std::invalid_argument("versality is defined for complete flags");
  }

  std::vector<Matrix> quotient_coords;
  std::vector<Matrix> basis_inverse;
  Matrix diag(0, d * d);
  for (const Flag& p : fam.flags) {
    quotient_coords.push_back(annihilator(fix_space(p)).basis());
    basis_inverse.push_back(inverse(p.basis(), f));
    diag = stack(diag, quotient_coords.back());
  }
  const Eigen::Index total = diag.rows();
  // Rows of `to_m` are functionals on prod End H / Fix P_i killing the diagonal image.
  const Matrix diag_t = diag.transpose();
  const Matrix to_m = kernel(diag_t, f).basis();
  const Eigen::Index mdim = to_m.rows();

  Matrix out = Matrix::Zero(fam.base_tangent_dim, mdim);
  for (int t = 0; t < fam.base_tangent_dim; ++t) {
    const auto& dirs = fam.deformations[static_cast<std::size_t>(t)];
    if (dirs.size() != fam.flags.size()) throw std::invalid_argument("need one deformation per flag");
    Matrix y(total, 1);
    Eigen::Index offset = 0;
    for (std::size_t i = 0; i < fam.flags.size(); ++i) {
      if (dirs[i].rows() != d || dirs[i].cols() != d) throw std::invalid_argument("deformations must be d x d");
      // G + eps W = G (1 + eps phi), so phi = G^{-1} W.
      const Matrix phi = multiply(basis_inverse[i], dirs[i], f);
      const Matrix flat = Eigen::Map<const Matrix>(phi.data(), d * d, 1);
      const Matrix coords = multiply(quotient_coords[i], flat, f);
      y.middleRows(offset, coords.rows()) = coords;
      offset += coords.rows();
    }
    if (mdim > 0) out.row(t) = multiply(to_m, y, f).transpose();
  }
  return out;
}

bool is_versal_at_point(const FirstOrderFamily& fam) {
  const Matrix delta = delta_matrix(fam);
  if (delta.cols() == 0) return true;
  return rank(delta, fam.flags.front().field()) == delta.cols();
}

std::string format_flag(const Flag& flag) {
  std::string text = format_matrix(flag.basis(), flag.field());
  if (!flag.is_complete()) {
    std::string c = " coranks=";
    for (std::size_t j = 0; j < flag.coranks().size(); ++j) {
      if (j) c += ',';
      c += std::to_string(flag.coranks()[j]);
    }
    text.insert(text.find('\n'), c);
  }
  return text;
}

Flag parse_flag(const std::string& text) {
  ParsedMatrix pm = parse_matrix_text(text);
  const int d = static_cast<int>(pm.matrix.cols());
  if (pm.matrix.rows() != d)
    throw ParseError("flag needs exactly d=" + std::to_string(d) + " basis rows, got " +
                         std::to_string(pm.matrix.rows()), 0, 0);
  std::vector<int> coranks;
  if (!pm.coranks.empty()) {
    std::stringstream ss(pm.coranks);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("malformed coranks list '" + pm.coranks + "'", 1, 1);
      coranks.push_back(std::stoi(tok));
    }
  }
  return Flag(std::move(pm.matrix), PrimeField(pm.modulus), std::move(coranks));
}

Flag read_flag_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open flag file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_flag(buf.str());
}

}  // namespace richkit
