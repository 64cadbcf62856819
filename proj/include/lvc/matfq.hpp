#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvc/coxeter.hpp"

namespace lvc::matfq {

bool is_prime(std::uint64_t n);

/// Arithmetic modulo a prime p < 2^16.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);
  /// Skips the primality check; p must already be a validated prime.
  static PrimeField trusted(std::uint32_t p) noexcept { return PrimeField(p, 0); }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t reduce(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return (a * b) % p_; }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  /// Throws SingularMatrix on zero.
  std::uint32_t inv(std::uint32_t a) const;
  /// Smallest generator of the multiplicative group.
  std::uint32_t primitive_root() const;

 private:
  PrimeField(std::uint32_t p, int) noexcept : p_(p) {}
  std::uint32_t p_;
};

/// Residue modulo a prime, carrying its modulus.
class FieldElement {
 public:
  FieldElement(long long value, std::uint32_t p);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t p() const noexcept { return p_; }

  FieldElement inverse() const;
  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend FieldElement operator/(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a);
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement(std::uint32_t value, std::uint32_t p, bool) : value_(value), p_(p) {}
  std::uint32_t value_;
  std::uint32_t p_;
};

inline constexpr int kMaxDim = 5;

/// Packed entries of a matrix, `bit_width(p-1)` bits per entry, row-major.
using MatrixKey = unsigned __int128;

struct MatrixKeyHash {
  std::size_t operator()(MatrixKey k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k);
    auto hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x7F4A7C159E3779B9ULL + (lo << 6) + (lo >> 2));
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
  }
};

/// Square matrix over F_p, n <= kMaxDim.
class MatrixFq {
 public:
  MatrixFq(int n, std::uint32_t p);

  static MatrixFq identity(int n, std::uint32_t p);
  static MatrixFq from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p);
  static MatrixFq diagonal(std::span<const long long> entries, std::uint32_t p);
  /// Semicolon-separated rows of space-separated integers, reduced mod p.
  static MatrixFq parse(std::string_view literal, std::uint32_t p);
  /// P with P e_j = e_{sigma(j)}.
  static MatrixFq permutation(std::span<const std::int8_t> sigma, std::uint32_t p);

  int n() const noexcept { return n_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }
  std::uint32_t& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }
  FieldElement entry(int i, int j) const { return {(*this)(i, j), p_}; }

  std::uint32_t determinant() const;
  bool is_invertible() const { return determinant() != 0; }
  /// Throws SingularMatrix.
  MatrixFq inverse() const;
  MatrixFq transpose() const;

  bool is_upper_triangular() const noexcept;
  bool is_lower_triangular() const noexcept;
  bool is_upper_unitriangular() const noexcept;
  bool is_lower_unitriangular() const noexcept;
  bool is_diagonal() const noexcept { return is_upper_triangular() && is_lower_triangular(); }
  bool is_scalar() const noexcept;

  std::string to_string() const;

  /// Packs entries; requires n^2 * bit_width(p-1) <= 128.
  MatrixKey key() const noexcept;
  static MatrixFq from_key(MatrixKey key, int n, std::uint32_t p);
  static bool key_fits(int n, std::uint32_t p) noexcept;

  /// Zero matrix shaped like `like`, without re-validating n and p.
  static MatrixFq zero_like(const MatrixFq& like) noexcept { return MatrixFq(like.n_, like.p_, 0); }

  friend MatrixFq operator*(const MatrixFq& a, const MatrixFq& b);
  friend bool operator==(const MatrixFq& a, const MatrixFq& b) noexcept;

 private:
  MatrixFq(int n, std::uint32_t p, int) noexcept : n_(n), p_(p) {}

  int n_;
  std::uint32_t p_;
  std::array<std::uint32_t, kMaxDim * kMaxDim> a_{};
};

/// Images of 0..n-1 under a permutation.
using Permutation = std::array<std::int8_t, kMaxDim>;

/// Lehmer-code rank of a permutation of 0..n-1, in [0, n!).
std::uint32_t permutation_rank(const Permutation& sigma, int n) noexcept;
Permutation permutation_unrank(std::uint32_t rank, int n);
/// The type A_{n-1} Weyl element with signed-permutation image sigma + 1.
coxeter::WeylElement weyl_element(const Permutation& sigma, int n);
Permutation permutation_of(const coxeter::WeylElement& w);

/// Bruhat cell of an invertible matrix: the sigma with g in B P_sigma B,
/// where B is the upper triangular Borel. Throws SingularMatrix.
Permutation bruhat_permutation(const MatrixFq& g);

/// g = u1 · w_dot · torus · u2 with u1 upper unitriangular, w_dot the
/// permutation matrix of w, torus diagonal and u2 in U ∩ w_dot^{-1} U^- w_dot.
struct BruhatFactors {
  MatrixFq u1;
  coxeter::WeylElement w;
  MatrixFq w_dot;
  MatrixFq torus;
  MatrixFq u2;
};

BruhatFactors bruhat_word(const MatrixFq& g);

enum class TwistKind { trivial, flip };

TwistKind parse_twist(std::string_view text);
std::string to_string(TwistKind kind);

/// Antidiagonal J with J(i, n-1-i) = (-1)^i.
MatrixFq flip_pinning(int n, std::uint32_t p);

/// trivial: g. flip: J (g^T)^{-1} J^{-1}. Throws SingularMatrix.
MatrixFq twist(const MatrixFq& g, TwistKind kind);

}  // namespace lvc::matfq
