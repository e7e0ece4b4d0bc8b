#include "richkit/interpolate.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace richkit {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Rational {
  i128 num = 0;
  i128 den = 1;

  Rational() = default;
  Rational(i128 n, i128 d = 1) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Rational operator+(const Rational& x, const Rational& y) {
    const i128 g = gcd128(x.den, y.den);
    return Rational(x.num * (y.den / g) + y.num * (x.den / g), x.den / g * y.den);
  }
  friend Rational operator-(const Rational& x, const Rational& y) { return x + Rational(-y.num, y.den); }
  friend Rational operator*(const Rational& x, const Rational& y) {
    const i128 g1 = gcd128(x.num, y.den), g2 = gcd128(y.num, x.den);
    const i128 a = g1 ? g1 : 1, b = g2 ? g2 : 1;
    return Rational((x.num / a) * (y.num / b), (x.den / b) * (y.den / a));
  }
  Rational over(i128 k) const { return Rational(num, den * k); }
};

}  // namespace

std::int64_t CountPolynomial::operator()(std::int64_t q) const {
  std::int64_t v = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * q + *it;
  return v;
}

CountPolynomial interpolate_counts(std::span<const int> qs, std::span<const std::uint64_t> counts, int degree_bound) {
  if (qs.size() != counts.size()) throw std::invalid_argument("need one count per sample point");
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be non-negative");
  if (static_cast<int>(qs.size()) <= degree_bound + 1)
    throw std::invalid_argument("need more than " + std::to_string(degree_bound + 1) + " sample points, got " +
                                std::to_string(qs.size()));
  if (std::set<int>(qs.begin(), qs.end()).size() != qs.size())
    throw std::invalid_argument("sample points must be distinct");

  const std::size_t n = qs.size();
  // Newton divided differences.
  std::vector<Rational> coef(n);
  for (std::size_t i = 0; i < n; ++i) coef[i] = Rational(static_cast<i128>(counts[i]));
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      coef[i] = (coef[i] - coef[i - 1]).over(qs[i] - qs[i - level]);

  // Expand prod (q - q_j) into the monomial basis.
  std::vector<Rational> mono(n);
  std::vector<Rational> basis{Rational(1)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < basis.size(); ++k) mono[k] = mono[k] + coef[i] * basis[k];
    std::vector<Rational> next(basis.size() + 1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      next[k + 1] = next[k + 1] + basis[k];
      next[k] = next[k] - basis[k] * Rational(qs[i]);
    }
    basis = std::move(next);
  }

  CountPolynomial out;
  for (std::size_t k = 0; k < n; ++k) {
    if (mono[k].den != 1) {
      out.anomaly = true;
      out.anomaly_reason = "coefficient of q^" + std::to_string(k) + " is not an integer";
    }
  }
  int top = static_cast<int>(n) - 1;
  while (top >= 0 && mono[static_cast<std::size_t>(top)].num == 0) --top;
  out.degree = top;
  if (!out.anomaly && top > degree_bound) {
    out.anomaly = true;
    out.anomaly_reason = "degree " + std::to_string(top) + " exceeds the bound " + std::to_string(degree_bound);
  }
  if (!out.anomaly)
    for (int k = 0; k <= top; ++k) out.coefficients.push_back(static_cast<std::int64_t>(mono[static_cast<std::size_t>(k)].num));
  return out;
}

CountPolynomial point_count_poly(const std::function<std::uint64_t(const PrimeField&)>& count,
                                 std::span<const int> qs, int degree_bound) {
  std::vector<std::uint64_t> counts;
  for (int q : qs) counts.push_back(count(PrimeField(q)));
  return interpolate_counts(qs, counts, degree_bound);
}

std::string format_polynomial(const CountPolynomial& p) {
  if (p.anomaly) return "anomaly: " + p.anomaly_reason;
  if (p.coefficients.empty()) return "0";
  std::string out;
  for (int k = static_cast<int>(p.coefficients.size()) - 1; k >= 0; --k) {
    std::int64_t c = p.coefficients[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (c < 0) c = -c;
    if (c != 1 || k == 0) out += std::to_string(c) + (k > 0 ? "*" : "");
    if (k >= 1) out += "q";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace richkit
