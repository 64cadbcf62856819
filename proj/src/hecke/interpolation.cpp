#include "lvc/interpolation.hpp"

#include <sstream>

#include "lvc/error.hpp"

namespace lvc {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPolynomial::RationalPolynomial(const IntPolynomial& p) {
  for (const auto& c : p.coefficients()) coeffs_.emplace_back(c);
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool RationalPolynomial::has_integer_coefficients() const {
  for (const auto& c : coeffs_)
    if (denominator(c) != 1) return false;
  return true;
}

IntPolynomial RationalPolynomial::to_int_polynomial() const {
  if (!has_integer_coefficients()) throw Error("polynomial has non-integer coefficients: " + to_string());
  std::vector<BigInt> ints;
  for (const auto& c : coeffs_) ints.push_back(numerator(c));
  return IntPolynomial(std::move(ints));
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string RationalPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0 || c != 1) out << c;
    if (k > 0) out << (k == 1 ? "t" : "t^" + std::to_string(k));
  }
  return out.str();
}

RationalPolynomial lagrange_interpolate(std::span<const std::pair<BigInt, BigInt>> points) {
  const std::size_t m = points.size();
  std::vector<Rational> total(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    // basis = prod_{j != i} (x - x_j), built in the monomial basis.
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      if (points[j].first == points[i].first) throw FitError("repeated abscissa in interpolation");
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * Rational(points[j].first);
      }
      basis = std::move(next);
      denom *= Rational(points[i].first - points[j].first);
    }
    const Rational scale = Rational(points[i].second) / denom;
    for (std::size_t k = 0; k < basis.size(); ++k) total[k] += basis[k] * scale;
  }
  return RationalPolynomial(std::move(total));
}

}  // namespace lvc
