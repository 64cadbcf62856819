#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace lvc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense polynomial in t with arbitrary-precision integer coefficients,
/// lowest degree first, no trailing zeros.
class IntPolynomial {
 public:
  static constexpr int kZeroDegree = -1;

  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<long long> coeffs);
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  static IntPolynomial constant(const BigInt& c);
  /// t^k
  static IntPolynomial monomial(int k, const BigInt& c = 1);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
  BigInt leading_coefficient() const { return is_zero() ? BigInt(0) : coeffs_.back(); }
  /// Coefficient of t^k; zero past the degree.
  BigInt operator[](int k) const;
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }

  BigInt evaluate(const BigInt& t) const;

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial& operator*=(const IntPolynomial& other);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Space-separated coefficients, low degree first ("" for zero).
  std::string to_coefficient_string() const;
  static IntPolynomial parse_coefficients(std::string_view text);
  /// Human-readable form such as "t^2 - t + 1".
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Exact value of p at an integer.
inline BigInt specialize(const IntPolynomial& p, const BigInt& q) { return p.evaluate(q); }

}  // namespace lvc
