#pragma once

// Exact interpolation of point counts |X(F_q)| by integer polynomials in q.

#include "richkit/exactla.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace richkit {

struct CountPolynomial {
  /// coefficients[k] multiplies q^k; trailing zeros trimmed. Empty for the zero polynomial.
  std::vector<std::int64_t> coefficients;
  /// -1 for the zero polynomial.
  int degree = -1;
  /// The samples are not fit by an integer polynomial of degree <= the bound.
  bool anomaly = false;
  std::string anomaly_reason;

  std::int64_t operator()(std::int64_t q) const;
};

/// Interpolates through (qs[i], counts[i]). Needs more than degree_bound + 1
/// distinct samples so the fit is overdetermined; throws std::invalid_argument
/// otherwise.
CountPolynomial interpolate_counts(std::span<const int> qs, std::span<const std::uint64_t> counts, int degree_bound);

/// Counts by calling `count` on F_q for each q, then interpolates.
CountPolynomial point_count_poly(const std::function<std::uint64_t(const PrimeField&)>& count,
                                 std::span<const int> qs, int degree_bound);

/// "q^3 + 2*q^2 + 2*q + 1"
std::string format_polynomial(const CountPolynomial& p);

}  // namespace richkit
