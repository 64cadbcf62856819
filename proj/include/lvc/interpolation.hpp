#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lvc/polynomial.hpp"

namespace lvc {

/// Dense polynomial with exact rational coefficients, lowest degree first.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);
  explicit RationalPolynomial(const IntPolynomial& p);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Rational leading_coefficient() const { return is_zero() ? Rational(0) : coeffs_.back(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  bool has_integer_coefficients() const;
  /// Throws Error unless every coefficient is an integer.
  IntPolynomial to_int_polynomial() const;

  Rational evaluate(const Rational& x) const;
  std::string to_string() const;

  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Unique polynomial of degree < points.size() through the given (x, y)
/// points. Abscissae must be distinct.
RationalPolynomial lagrange_interpolate(std::span<const std::pair<BigInt, BigInt>> points);

}  // namespace lvc
