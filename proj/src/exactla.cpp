#include "richkit/exactla.hpp"

#include "richkit/errors.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace richkit {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

namespace {

const std::array<Residue, 256>* inverse_table(int p) {
  static std::array<std::array<Residue, 256>, 252> tables{};
  static std::array<bool, 252> ready{};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& t = tables[static_cast<std::size_t>(p)];
  if (!ready[static_cast<std::size_t>(p)]) {
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b)
        if ((a * b) % p == 1) t[static_cast<std::size_t>(a)] = static_cast<Residue>(b);
    ready[static_cast<std::size_t>(p)] = true;
  }
  return &t;
}

}  // namespace

PrimeField::PrimeField(int p) : p_(p) {
  if (p < 2 || p > 251 || !is_prime(p)) {
    throw std::invalid_argument("field modulus must be a prime in [2, 251], got " + std::to_string(p));
  }
  inverses_ = inverse_table(p);
}

Matrix make_matrix(int rows, int cols, std::initializer_list<long long> entries, const PrimeField& f) {
  if (static_cast<long long>(entries.size()) != static_cast<long long>(rows) * cols)
    throw std::invalid_argument("make_matrix: entry count does not match shape");
  Matrix m(rows, cols);
  auto it = entries.begin();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = f.reduce(*it++);
  return m;
}

Matrix identity_matrix(int n) { return Matrix::Identity(n, n); }

Matrix rref(const Matrix& m, const PrimeField& f) {
  Matrix a = m;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index lead = 0;
  for (Eigen::Index c = 0; c < cols && lead < rows; ++c) {
    Eigen::Index piv = lead;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    a.row(piv).swap(a.row(lead));
    const Residue s = f.inv(a(lead, c));
    for (Eigen::Index k = c; k < cols; ++k) a(lead, k) = f.mul(a(lead, k), s);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == lead || a(r, c) == 0) continue;
      const Residue factor = a(r, c);
      for (Eigen::Index k = c; k < cols; ++k) a(r, k) = f.sub(a(r, k), f.mul(factor, a(lead, k)));
    }
    ++lead;
  }
  return a;
}

int rank(const Matrix& m, const PrimeField& f) {
  const Matrix r = rref(m, f);
  int n = 0;
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    if ((r.row(i).array() != 0).any()) ++n;
  return n;
}

Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& f) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      long long s = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += static_cast<int>(a(i, k)) * b(k, j);
      out(i, j) = f.reduce(s);
    }
  }
  return out;
}

Matrix inverse(const Matrix& m, const PrimeField& f) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const Eigen::Index n = m.rows();
  Matrix aug(n, 2 * n);
  aug << m, Matrix::Identity(n, n);
  const Matrix r = rref(aug, f);
  if (!(r.leftCols(n).array() == Matrix::Identity(n, n).array()).all())
    throw std::invalid_argument("inverse: matrix is singular");
  return r.rightCols(n);
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw std::invalid_argument("stack: column counts differ");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

bool is_reduced(const Matrix& m, const PrimeField& f) {
  return (m.array() < static_cast<Residue>(f.modulus())).all();
}

Subspace::Subspace(int ambient_dim, const PrimeField& f) : ambient_(ambient_dim), field_(f), basis_(0, ambient_dim) {}

Subspace::Subspace(const Matrix& spanning, const PrimeField& f)
    : ambient_(static_cast<int>(spanning.cols())), field_(f) {
  const Matrix r = rref(spanning, f);
  Eigen::Index n = 0;
  while (n < r.rows() && (r.row(n).array() != 0).any()) ++n;
  basis_ = r.topRows(n);
}

Subspace Subspace::full(int ambient_dim, const PrimeField& f) { return Subspace(identity_matrix(ambient_dim), f); }

bool Subspace::contains(const RowVector& v) const {
  if (v.cols() != ambient_) throw std::invalid_argument("contains: ambient mismatch");
  Matrix m(basis_.rows() + 1, ambient_);
  m << basis_, v;
  return rank(m, field_) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("contains: ambient mismatch");
  return sum(*this, other).dim() == dim();
}

std::size_t Subspace::hash() const {
  std::size_t h = static_cast<std::size_t>(ambient_) * 1315423911u + static_cast<std::size_t>(field_.modulus());
  for (Eigen::Index i = 0; i < basis_.size(); ++i) h = h * 131 + basis_.data()[i];
  return h;
}

Subspace kernel(const Matrix& m, const PrimeField& f) {
  const Matrix r = rref(m, f);
  const int cols = static_cast<int>(m.cols());
  std::vector<int> pivot_col;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    Eigen::Index c = 0;
    while (c < cols && r(i, c) == 0) ++c;
    if (c == cols) break;
    pivot_col.push_back(static_cast<int>(c));
  }
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  Matrix basis = Matrix::Zero(static_cast<Eigen::Index>(free_cols.size()), cols);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis(static_cast<Eigen::Index>(k), fc) = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      basis(static_cast<Eigen::Index>(k), pivot_col[i]) = f.neg(r(static_cast<Eigen::Index>(i), fc));
  }
  return Subspace(basis, f);
}

int cokernel_dim(const Matrix& m, const PrimeField& f) { return static_cast<int>(m.rows()) - rank(m, f); }

Subspace annihilator(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.ambient_dim(), s.field());
  return kernel(s.basis(), s.field());
}

namespace {

void check_compatible(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("subspaces live in different ambient spaces");
  if (!(u.field() == v.field())) throw std::invalid_argument("subspaces are over different fields");
}

}  // namespace

Subspace intersect(const Subspace& u, const Subspace& v) {
  check_compatible(u, v);
  const Subspace both = sum(annihilator(u), annihilator(v));
  if (both.dim() == 0) return Subspace::full(u.ambient_dim(), u.field());
  return kernel(both.basis(), u.field());
}

Subspace sum(const Subspace& u, const Subspace& v) {
  check_compatible(u, v);
  if (u.dim() == 0) return v;
  if (v.dim() == 0) return u;
  return Subspace(stack(u.basis(), v.basis()), u.field());
}

std::string format_matrix(const Matrix& m, const PrimeField& f) {
  std::ostringstream out;
  out << "d=" << m.cols() << " p=" << f.modulus() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << static_cast<int>(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

namespace {

// Splits on blanks, recording the 1-based column of each token.
std::vector<std::pair<std::string, int>> tokenize(const std::string& line) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.emplace_back(line.substr(start, i - start), static_cast<int>(start) + 1);
  }
  return out;
}

long parse_number(const std::string& token, int line, int col) {
  if (token.empty()) throw ParseError("expected an integer", line, col);
  long v = 0;
  for (std::size_t k = 0; k < token.size(); ++k) {
    const char ch = token[k];
    if (ch < '0' || ch > '9') throw ParseError("expected an integer, got '" + token + "'", line, col + static_cast<int>(k));
    v = v * 10 + (ch - '0');
    if (v > 1000000) throw ParseError("integer too large", line, col);
  }
  return v;
}

}  // namespace

ParsedMatrix parse_matrix(std::istream& in) {
  ParsedMatrix out;
  std::string line;
  int lineno = 0;
  long d = -1;
  std::vector<std::vector<long>> rows;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().first[0] == '#') continue;
    if (!have_header || tokens.front().first.rfind("coranks=", 0) == 0) {
      for (const auto& [tok, col] : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value in header, got '" + tok + "'", lineno, col);
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        const int vcol = col + static_cast<int>(eq) + 1;
        if (key == "d") {
          d = parse_number(value, lineno, vcol);
        } else if (key == "p") {
          out.modulus = static_cast<int>(parse_number(value, lineno, vcol));
        } else if (key == "coranks") {
          out.coranks = value;
        } else {
          throw ParseError("unknown header key '" + key + "'", lineno, col);
        }
      }
      if (!have_header) {
        if (d < 0) throw ParseError("header must define d=<n>", lineno, 1);
        if (out.modulus == 0) throw ParseError("header must define p=<prime>", lineno, 1);
        if (!is_prime(out.modulus) || out.modulus > 251)
          throw ParseError("p must be a prime in [2, 251]", lineno, 1);
        have_header = true;
      }
      continue;
    }
    if (static_cast<long>(tokens.size()) != d)
      throw ParseError("expected " + std::to_string(d) + " entries, got " + std::to_string(tokens.size()), lineno,
                       tokens.size() > static_cast<std::size_t>(d) ? tokens[static_cast<std::size_t>(d)].second : 1);
    std::vector<long> row;
    for (const auto& [tok, col] : tokens) {
      const long v = parse_number(tok, lineno, col);
      if (v >= out.modulus) throw ParseError("entry " + tok + " is not reduced mod p", lineno, col);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("missing header line 'd=<n> p=<prime>'", lineno + 1, 1);
  out.matrix = Matrix(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (long j = 0; j < d; ++j) out.matrix(static_cast<Eigen::Index>(i), j) = static_cast<Residue>(rows[i][static_cast<std::size_t>(j)]);
  return out;
}

ParsedMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

}  // namespace richkit
