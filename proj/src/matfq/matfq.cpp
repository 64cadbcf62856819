#include "lvc/matfq.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "lvc/error.hpp"

namespace lvc::matfq {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- field

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p >= (1u << 16)) throw std::invalid_argument("prime too large: " + std::to_string(p));
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % p_;
  std::uint32_t base = a % p_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw SingularMatrix("zero has no inverse mod " + std::to_string(p_));
  return pow(a, p_ - 2);
}

std::uint32_t PrimeField::primitive_root() const {
  if (p_ == 2) return 1;
  std::vector<std::uint32_t> factors;
  std::uint32_t m = p_ - 1;
  for (std::uint32_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint32_t g = 2; g < p_; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](std::uint32_t q) { return pow(g, (p_ - 1) / q) != 1; });
    if (ok) return g;
  }
  return 1;
}

FieldElement::FieldElement(long long value, std::uint32_t p) : FieldElement(0u, p, true) {
  value_ = PrimeField(p).reduce(value);
}

FieldElement FieldElement::inverse() const { return {PrimeField(p_).inv(value_), p_, true}; }

namespace {
void check_same(const FieldElement& a, const FieldElement& b) {
  if (a.p() != b.p()) throw MismatchError("field elements over different primes");
}
}  // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
  check_same(a, b);
  return {(a.value_ + b.value_) % a.p_, a.p_, true};
}
FieldElement operator-(FieldElement a, FieldElement b) {
  check_same(a, b);
  return {(a.value_ + a.p_ - b.value_) % a.p_, a.p_, true};
}
FieldElement operator*(FieldElement a, FieldElement b) {
  check_same(a, b);
  return {(a.value_ * b.value_) % a.p_, a.p_, true};
}
FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inverse(); }
FieldElement operator-(FieldElement a) { return {(a.p_ - a.value_) % a.p_, a.p_, true}; }

// ---------------------------------------------------------------- matrices

MatrixFq::MatrixFq(int n, std::uint32_t p) : n_(n), p_(p) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("matrix size out of range: " + std::to_string(n));
  if (!is_prime(p) || p >= (1u << 16)) throw std::invalid_argument(std::to_string(p) + " is not a supported prime");
}

MatrixFq MatrixFq::identity(int n, std::uint32_t p) {
  MatrixFq m(n, p, 0);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixFq MatrixFq::from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p) {
  const int n = static_cast<int>(rows.size());
  MatrixFq m(n, p);
  PrimeField f(p);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw ParseError("matrix rows must all have length " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) m(i, j) = f.reduce(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

MatrixFq MatrixFq::diagonal(std::span<const long long> entries, std::uint32_t p) {
  MatrixFq m(static_cast<int>(entries.size()), p);
  PrimeField f(p);
  for (int i = 0; i < m.n(); ++i) m(i, i) = f.reduce(entries[static_cast<std::size_t>(i)]);
  return m;
}

MatrixFq MatrixFq::parse(std::string_view literal, std::uint32_t p) {
  std::vector<std::vector<long long>> rows;
  std::string text(literal);
  std::istringstream rows_in(text);
  std::string row;
  while (std::getline(rows_in, row, ';')) {
    std::istringstream in(row);
    std::vector<long long> values;
    std::string tok;
    while (in >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad matrix entry '" + tok + "'");
      }
    }
    if (!values.empty()) rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("empty matrix literal");
  return from_rows(rows, p);
}

MatrixFq MatrixFq::permutation(std::span<const std::int8_t> sigma, std::uint32_t p) {
  MatrixFq m(static_cast<int>(sigma.size()), p);
  for (int j = 0; j < m.n(); ++j) m(sigma[static_cast<std::size_t>(j)], j) = 1;
  return m;
}

std::uint32_t MatrixFq::determinant() const {
  auto f = PrimeField::trusted(p_);
  MatrixFq a = *this;
  std::uint32_t det = 1;
  for (int c = 0; c < n_; ++c) {
    int pivot = -1;
    for (int r = c; r < n_; ++r)
      if (a(r, c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int k = 0; k < n_; ++k) std::swap(a(pivot, k), a(c, k));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    std::uint32_t inv = f.inv(a(c, c));
    for (int r = c + 1; r < n_; ++r) {
      if (!a(r, c)) continue;
      std::uint32_t factor = f.mul(a(r, c), inv);
      for (int k = c; k < n_; ++k) a(r, k) = f.sub(a(r, k), f.mul(factor, a(c, k)));
    }
  }
  return det;
}

MatrixFq MatrixFq::inverse() const {
  auto f = PrimeField::trusted(p_);
  MatrixFq a = *this;
  MatrixFq inv = identity(n_, p_);
  for (int c = 0; c < n_; ++c) {
    int pivot = -1;
    for (int r = c; r < n_; ++r)
      if (a(r, c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw SingularMatrix("matrix is singular mod " + std::to_string(p_));
    if (pivot != c) {
      for (int k = 0; k < n_; ++k) {
        std::swap(a(pivot, k), a(c, k));
        std::swap(inv(pivot, k), inv(c, k));
      }
    }
    std::uint32_t s = f.inv(a(c, c));
    for (int k = 0; k < n_; ++k) {
      a(c, k) = f.mul(a(c, k), s);
      inv(c, k) = f.mul(inv(c, k), s);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || !a(r, c)) continue;
      std::uint32_t factor = a(r, c);
      for (int k = 0; k < n_; ++k) {
        a(r, k) = f.sub(a(r, k), f.mul(factor, a(c, k)));
        inv(r, k) = f.sub(inv(r, k), f.mul(factor, inv(c, k)));
      }
    }
  }
  return inv;
}

MatrixFq MatrixFq::transpose() const {
  MatrixFq t = zero_like(*this);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool MatrixFq::is_upper_triangular() const noexcept {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < i; ++j)
      if ((*this)(i, j)) return false;
  return true;
}

bool MatrixFq::is_lower_triangular() const noexcept {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if ((*this)(i, j)) return false;
  return true;
}

bool MatrixFq::is_upper_unitriangular() const noexcept {
  if (!is_upper_triangular()) return false;
  for (int i = 0; i < n_; ++i)
    if ((*this)(i, i) != 1) return false;
  return true;
}

bool MatrixFq::is_lower_unitriangular() const noexcept {
  if (!is_lower_triangular()) return false;
  for (int i = 0; i < n_; ++i)
    if ((*this)(i, i) != 1) return false;
  return true;
}

bool MatrixFq::is_scalar() const noexcept {
  if (!is_diagonal()) return false;
  for (int i = 1; i < n_; ++i)
    if ((*this)(i, i) != (*this)(0, 0)) return false;
  return true;
}

std::string MatrixFq::to_string() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (i) out += ';';
    for (int j = 0; j < n_; ++j) {
      if (j) out += ' ';
      out += std::to_string((*this)(i, j));
    }
  }
  return out;
}

bool MatrixFq::key_fits(int n, std::uint32_t p) noexcept {
  return n * n * std::bit_width(p - 1) <= 128;
}

MatrixKey MatrixFq::key() const noexcept {
  const int bits = std::bit_width(p_ - 1);
  MatrixKey k = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) k = (k << bits) | (*this)(i, j);
  return k;
}

MatrixFq MatrixFq::from_key(MatrixKey key, int n, std::uint32_t p) {
  MatrixFq m(n, p, 0);
  const int bits = std::bit_width(p - 1);
  const MatrixKey mask = (MatrixKey{1} << bits) - 1;
  for (int i = n - 1; i >= 0; --i)
    for (int j = n - 1; j >= 0; --j) {
      m(i, j) = static_cast<std::uint32_t>(key & mask);
      key >>= bits;
    }
  return m;
}

MatrixFq operator*(const MatrixFq& a, const MatrixFq& b) {
  if (a.n_ != b.n_ || a.p_ != b.p_) throw MismatchError("matrix shapes or fields differ");
  MatrixFq c = MatrixFq::zero_like(a);
  const int n = a.n_;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (int k = 0; k < n; ++k) acc += static_cast<std::uint64_t>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<std::uint32_t>(acc % a.p_);
    }
  return c;
}

bool operator==(const MatrixFq& a, const MatrixFq& b) noexcept {
  if (a.n_ != b.n_ || a.p_ != b.p_) return false;
  for (int i = 0; i < a.n_; ++i)
    for (int j = 0; j < a.n_; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

// ---------------------------------------------------------------- permutations

std::uint32_t permutation_rank(const Permutation& sigma, int n) noexcept {
  std::uint32_t rank = 0;
  for (int i = 0; i < n; ++i) {
    std::uint32_t smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (sigma[static_cast<std::size_t>(j)] < sigma[static_cast<std::size_t>(i)]) ++smaller;
    rank = rank * static_cast<std::uint32_t>(n - i) + smaller;
  }
  return rank;
}

Permutation permutation_unrank(std::uint32_t rank, int n) {
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = rank % static_cast<std::uint32_t>(n - i);
    rank /= static_cast<std::uint32_t>(n - i);
  }
  std::vector<std::int8_t> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), std::int8_t{0});
  Permutation sigma{};
  for (int i = 0; i < n; ++i) {
    auto d = digits[static_cast<std::size_t>(i)];
    sigma[static_cast<std::size_t>(i)] = pool[d];
    pool.erase(pool.begin() + d);
  }
  return sigma;
}

coxeter::WeylElement weyl_element(const Permutation& sigma, int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(i)] + 1;
  return coxeter::WeylElement::from_signed_permutation(coxeter::CoxeterDatum(coxeter::Family::A, n - 1), image);
}

Permutation permutation_of(const coxeter::WeylElement& w) {
  if (w.datum().family() != coxeter::Family::A) {
    throw std::invalid_argument("matrix representatives exist only for type A");
  }
  Permutation sigma{};
  auto image = w.image();
  for (std::size_t i = 0; i < image.size(); ++i) sigma[i] = static_cast<std::int8_t>(image[i] - 1);
  return sigma;
}

// ---------------------------------------------------------------- Bruhat

Permutation bruhat_permutation(const MatrixFq& g) {
  const int n = g.n();
  auto f = PrimeField::trusted(g.p());
  MatrixFq a = g;
  Permutation sigma{};
  unsigned used = 0;
  for (int j = 0; j < n; ++j) {
    int pivot = -1;
    for (int r = n - 1; r >= 0; --r) {
      if (!(used & (1u << r)) && a(r, j)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrix("matrix is singular mod " + std::to_string(g.p()));
    const std::uint32_t inv = f.inv(a(pivot, j));
    for (int r = 0; r < pivot; ++r) {
      if ((used & (1u << r)) || !a(r, j)) continue;
      const std::uint32_t c = f.mul(a(r, j), inv);
      for (int k = j; k < n; ++k) a(r, k) = f.sub(a(r, k), f.mul(c, a(pivot, k)));
    }
    used |= 1u << pivot;
    sigma[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(pivot);
  }
  return sigma;
}

BruhatFactors bruhat_word(const MatrixFq& g) {
  const int n = g.n();
  const std::uint32_t p = g.p();
  auto f = PrimeField::trusted(p);
  MatrixFq a = g;
  MatrixFq left = MatrixFq::identity(n, p);   // accumulated row operations
  MatrixFq right = MatrixFq::identity(n, p);  // accumulated column operations
  Permutation sigma{};
  std::array<int, kMaxDim> pivot_col{};
  unsigned used = 0;

  auto row_op = [&](int target, int source, std::uint32_t c) {  // row target -= c * row source
    for (int k = 0; k < n; ++k) {
      a(target, k) = f.sub(a(target, k), f.mul(c, a(source, k)));
      left(target, k) = f.sub(left(target, k), f.mul(c, left(source, k)));
    }
  };
  auto col_op = [&](int target, int source, std::uint32_t c) {  // col target -= c * col source
    for (int k = 0; k < n; ++k) {
      a(k, target) = f.sub(a(k, target), f.mul(c, a(k, source)));
      right(k, target) = f.sub(right(k, target), f.mul(c, right(k, source)));
    }
  };

  for (int j = 0; j < n; ++j) {
    int pivot = -1;
    for (int r = n - 1; r >= 0; --r) {
      if (!(used & (1u << r)) && a(r, j)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrix("matrix is singular mod " + std::to_string(p));
    const std::uint32_t inv = f.inv(a(pivot, j));
    for (int r = 0; r < n; ++r) {
      if (r == pivot || !a(r, j)) continue;
      if (r < pivot) {
        row_op(r, pivot, f.mul(a(r, j), inv));
      } else {
        // r is a used row below the pivot; its own pivot column is cleared except (r, col).
        const int col = pivot_col[static_cast<std::size_t>(r)];
        col_op(j, col, f.mul(a(r, j), f.inv(a(r, col))));
      }
    }
    used |= 1u << pivot;
    pivot_col[static_cast<std::size_t>(pivot)] = j;
    sigma[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(pivot);
  }

  MatrixFq torus = MatrixFq::zero_like(g);
  for (int j = 0; j < n; ++j) torus(j, j) = a(sigma[static_cast<std::size_t>(j)], j);
  std::span<const std::int8_t> perm(sigma.data(), static_cast<std::size_t>(n));
  return {left.inverse(), weyl_element(sigma, n), MatrixFq::permutation(perm, p), torus, right.inverse()};
}

// ---------------------------------------------------------------- twist

TwistKind parse_twist(std::string_view text) {
  if (text == "trivial" || text == "id" || text == "none") return TwistKind::trivial;
  if (text == "flip") return TwistKind::flip;
  throw ParseError("unknown twist '" + std::string(text) + "'");
}

std::string to_string(TwistKind kind) { return kind == TwistKind::flip ? "flip" : "trivial"; }

MatrixFq flip_pinning(int n, std::uint32_t p) {
  MatrixFq j(n, p);
  for (int i = 0; i < n; ++i) j(i, n - 1 - i) = (i % 2 == 0) ? 1 : p - 1;
  return j;
}

MatrixFq twist(const MatrixFq& g, TwistKind kind) {
  if (kind == TwistKind::trivial) return g;
  // (J g^{-T} J^{-1})(a, b) = (-1)^{a+b} g^{-1}(n-1-b, n-1-a)
  const MatrixFq inv = g.inverse();
  const int n = g.n();
  const std::uint32_t p = g.p();
  MatrixFq out = MatrixFq::zero_like(g);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::uint32_t v = inv(n - 1 - b, n - 1 - a);
      out(a, b) = ((a + b) % 2 == 0 || v == 0) ? v : p - v;
    }
  return out;
}

}  // namespace lvc::matfq
