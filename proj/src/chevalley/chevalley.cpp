#include "lvc/chevalley.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "lvc/error.hpp"
#include "lvc/interpolation.hpp"

namespace lvc::chevalley {

namespace {

BigInt power(std::uint32_t base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<long long> parse_integer_list(std::string_view text, char sep) {
  std::vector<long long> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    auto field = text.substr(start, end - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw ParseError("bad integer '" + std::string(field) + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------- F_p[x]

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly mul(const FpPoly& a, const FpPoly& b, const matfq::PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  trim(c);
  return c;
}

FpPoly add(FpPoly a, const FpPoly& b, const matfq::PrimeField& F) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
  trim(a);
  return a;
}

FpPoly scale(FpPoly a, std::uint32_t c, const matfq::PrimeField& F) {
  for (auto& x : a) x = F.mul(x, c);
  trim(a);
  return a;
}

/// Remainder of a modulo nonzero b.
FpPoly remainder(FpPoly a, const FpPoly& b, const matfq::PrimeField& F) {
  const auto lead_inv = F.inv(b.back());
  while (!a.empty() && a.size() >= b.size()) {
    const auto shift = a.size() - b.size();
    const auto c = F.mul(a.back(), lead_inv);
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    trim(a);
  }
  return a;
}

FpPoly gcd(FpPoly a, FpPoly b, const matfq::PrimeField& F) {
  while (!b.empty()) {
    auto r = remainder(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(a, F.inv(a.back()), F);
  return a;
}

FpPoly derivative(const FpPoly& f, const matfq::PrimeField& F) {
  FpPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(F.mul(static_cast<std::uint32_t>(i % F.p()), f[i]));
  trim(d);
  return d;
}

/// Quotient of a by nonzero b.
/// base^e mod m.
FpPoly power_mod(FpPoly base, std::uint64_t e, const FpPoly& m, const matfq::PrimeField& F) {
  FpPoly acc{1};
  base = remainder(std::move(base), m, F);
  while (e > 0) {
    if (e & 1) acc = remainder(mul(acc, base, F), m, F);
    base = remainder(mul(base, base, F), m, F);
    e >>= 1;
  }
  return acc;
}

/// Degree of each distinct monic irreducible factor of f, ascending. The
/// factors of degree dividing k are exactly those of gcd(f, x^(p^k) - x).
std::vector<int> distinct_factor_degrees(const FpPoly& f, const matfq::PrimeField& F) {
  const int n = degree(f);
  std::vector<int> count(n + 1, 0);
  FpPoly frobenius{0, 1};
  for (int k = 1; k <= n; ++k) {
    frobenius = power_mod(frobenius, F.p(), f, F);
    int covered = degree(gcd(f, add(frobenius, FpPoly{0, F.neg(1)}, F), F));
    for (int j = 1; j < k; ++j)
      if (k % j == 0) covered -= j * count[j];
    count[k] = covered / k;
  }
  std::vector<int> out;
  for (int k = 1; k <= n; ++k) out.insert(out.end(), count[k], k);
  return out;
}

std::uint32_t evaluate(const FpPoly& f, std::uint32_t x, const matfq::PrimeField& F) {
  std::uint32_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

// Rank of an integer matrix over Q by exact elimination.
int rational_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [c](const auto& r) { return r[c] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / pr[c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * pr[k];
    }
    ++rank;
  }
  return rank;
}

MatrixFq diag_power(int n, std::uint32_t p, std::uint32_t root, int i) {
  auto d = MatrixFq::identity(n, p);
  d(0, 0) = matfq::PrimeField::trusted(p).pow(root, static_cast<std::uint64_t>(i));
  return d;
}

}  // namespace

// ---------------------------------------------------------------- GroupSpec

GroupFamily parse_family(std::string_view text) {
  if (text == "GL") return GroupFamily::GL;
  if (text == "SL") return GroupFamily::SL;
  throw ParseError("unknown group family '" + std::string(text) + "'");
}

std::string to_string(GroupFamily family) { return family == GroupFamily::GL ? "GL" : "SL"; }

GroupSpec::GroupSpec(GroupFamily family, int n, std::uint32_t p, TwistKind twist)
    : family_(family), n_(n), p_(p), twist_(twist) {
  if (n < 2 || n > matfq::kMaxDim) throw Error("matrix size must be in [2, " + std::to_string(matfq::kMaxDim) + "]");
  if (!matfq::is_prime(p) || p >= (1u << 16)) throw Error(std::to_string(p) + " is not a supported prime");
}

BigInt GroupSpec::order() const {
  BigInt pn = power(p_, n_);
  BigInt r = 1;
  for (int i = 0; i < n_; ++i) r *= pn - power(p_, i);
  if (family_ == GroupFamily::SL) r /= p_ - 1;
  return r;
}

BigInt GroupSpec::borel_order() const {
  return power(p_ - 1, dim_torus()) * power(p_, n_ * (n_ - 1) / 2);
}

std::uint64_t GroupSpec::num_flags() const {
  BigInt total = 1;
  for (int i = 2; i <= n_; ++i) total *= (power(p_, i) - 1) / (p_ - 1);
  if (total > std::numeric_limits<std::uint64_t>::max()) throw Error("flag count overflows 64 bits");
  return static_cast<std::uint64_t>(total);
}

coxeter::DiagramAutomorphism GroupSpec::weyl_automorphism() const {
  const auto datum = weyl_datum();
  if (twist_ == TwistKind::trivial || n_ == 2) return coxeter::DiagramAutomorphism::identity(datum);
  return coxeter::DiagramAutomorphism::flip(datum);
}

int GroupSpec::dim_borel() const noexcept {
  const int gl = n_ * (n_ + 1) / 2;
  return family_ == GroupFamily::GL ? gl : gl - 1;
}

int GroupSpec::dim_fixed_torus() const {
  if (twist_ == TwistKind::trivial) return dim_torus();
  // The flip acts on cocharacters of the diagonal torus by v -> -reverse(v).
  const auto n = static_cast<std::size_t>(n_);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][n - 1 - i] -= 1;
    rows[i][i] -= 1;
  }
  if (family_ == GroupFamily::SL) rows.emplace_back(n, Rational(1));
  return n_ - rational_rank(std::move(rows));
}

bool GroupSpec::contains(const MatrixFq& g) const {
  if (g.n() != n_ || g.p() != p_) return false;
  const auto det = g.determinant();
  return family_ == GroupFamily::GL ? det != 0 : det == 1;
}

MatrixFq GroupSpec::representative(const coxeter::WeylElement& w) const {
  const auto sigma = matfq::permutation_of(w);
  auto m = MatrixFq::permutation(std::span<const std::int8_t>(sigma.data(), static_cast<std::size_t>(n_)), p_);
  if (family_ == GroupFamily::SL && w.length() % 2 == 1) {
    const matfq::PrimeField F = matfq::PrimeField::trusted(p_);
    for (int i = 0; i < n_; ++i) m(i, 0) = F.neg(m(i, 0));
  }
  return m;
}

std::vector<MatrixFq> GroupSpec::generators() const {
  std::vector<MatrixFq> gens;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      auto t = MatrixFq::identity(n_, p_);
      t(i, j) = 1;
      gens.push_back(t);
    }
  const matfq::PrimeField F(p_);
  const auto r = F.primitive_root();
  auto torus = MatrixFq::identity(n_, p_);
  torus(0, 0) = r;
  torus(1, 1) = F.inv(r);
  gens.push_back(torus);
  if (family_ == GroupFamily::GL) gens.push_back(diag_power(n_, p_, r, 1));
  return gens;
}

std::string GroupSpec::to_string() const {
  std::string s = chevalley::to_string(family_) + std::to_string(n_) + "(F" + std::to_string(p_);
  if (twist_ != TwistKind::trivial) s += "," + matfq::to_string(twist_);
  return s + ")";
}

MatrixFq twisted_conjugate(const MatrixFq& g, const MatrixFq& h, const GroupSpec& spec) {
  if (!spec.contains(g)) throw Error("conjugating element is not in " + spec.to_string());
  if (!spec.contains(h)) throw Error("conjugated element is not in " + spec.to_string());
  return g * h * matfq::twist(g, spec.twist()).inverse();
}

// ---------------------------------------------------------------- orbits

TwistedClassOrbit::TwistedClassOrbit(GroupSpec spec, MatrixFq base, std::vector<MatrixKey> sorted_keys)
    : spec_(std::move(spec)), base_(std::move(base)), keys_(std::move(sorted_keys)) {
  const BigInt order = spec_.order();
  if (keys_.empty() || order % keys_.size() != 0)
    throw Error("orbit size " + std::to_string(keys_.size()) + " does not divide |G|");
  centralizer_order_ = order / keys_.size();
}

bool TwistedClassOrbit::contains(const MatrixFq& g) const {
  if (g.n() != spec_.n() || g.p() != spec_.p()) return false;
  return std::binary_search(keys_.begin(), keys_.end(), g.key());
}

TwistedClassOrbit orbit(const MatrixFq& h, const GroupSpec& spec, std::uint64_t cap, kernels::Exec exec) {
  if (!spec.contains(h)) throw Error("base point is not in " + spec.to_string());
  if (!MatrixFq::key_fits(spec.n(), spec.p()))
    throw Error("matrices of " + spec.to_string() + " do not fit the packed key");
  std::vector<kernels::LinearMap> maps;
  for (const auto& g : spec.generators()) maps.push_back({g, matfq::twist(g, spec.twist()).inverse()});
  return {spec, h, kernels::orbit_closure(exec, h, maps, cap)};
}

BigInt CentralizerProfile::gl_order() const {
  BigInt total = 0;
  for (std::size_t d = 1; d < det_histogram.size(); ++d) total += det_histogram[d];
  return total;
}

std::uint32_t CentralizerProfile::det_image_size() const {
  std::uint32_t count = 0;
  for (std::size_t d = 1; d < det_histogram.size(); ++d) count += det_histogram[d] > 0;
  return count;
}

namespace {

/// Basis of {X : XA = AX} over F_p.
std::vector<MatrixFq> commutant_basis(const MatrixFq& a) {
  const int n = a.n();
  const matfq::PrimeField F = matfq::PrimeField::trusted(a.p());
  const int vars = n * n;
  // Row (i, j) of the system X a - a X = 0 in the unknowns X_ab.
  std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(vars),
                                               std::vector<std::uint32_t>(static_cast<std::size_t>(vars), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& row = rows[static_cast<std::size_t>(i * n + j)];
      for (int k = 0; k < n; ++k) {
        auto& x = row[static_cast<std::size_t>(i * n + k)];
        x = F.add(x, a(k, j));
        auto& y = row[static_cast<std::size_t>(k * n + j)];
        y = F.sub(y, a(i, k));
      }
    }
  // Reduced row echelon form.
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < vars && rank < vars; ++c) {
    int pr = -1;
    for (int r = rank; r < vars; ++r)
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pr)]);
    auto& prow = rows[static_cast<std::size_t>(rank)];
    const auto inv = F.inv(prow[static_cast<std::size_t>(c)]);
    for (auto& x : prow) x = F.mul(x, inv);
    for (int r = 0; r < vars; ++r) {
      if (r == rank) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      const auto f = row[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int k = 0; k < vars; ++k)
        row[static_cast<std::size_t>(k)] = F.sub(row[static_cast<std::size_t>(k)], F.mul(f, prow[static_cast<std::size_t>(k)]));
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(vars), false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<MatrixFq> basis;
  for (int free = 0; free < vars; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    auto x = MatrixFq::zero_like(a);
    x(free / n, free % n) = 1;
    for (int r = 0; r < rank; ++r) {
      const int c = pivot_col[static_cast<std::size_t>(r)];
      x(c / n, c % n) = F.neg(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(free)]);
    }
    basis.push_back(x);
  }
  return basis;
}

/// Sweeps the span of `basis`; `keep` filters members before the det tally.
template <class Keep>
CentralizerProfile sweep_span(const MatrixFq& like, const std::vector<MatrixFq>& basis, std::uint64_t cap,
                              kernels::Exec exec, Keep keep) {
  const int n = like.n();
  const auto p = like.p();
  const matfq::PrimeField F = matfq::PrimeField::trusted(p);
  CentralizerProfile profile;
  profile.linear_dimension = static_cast<int>(basis.size());
  const BigInt total = power(p, profile.linear_dimension);
  if (total > cap) throw CapExceeded("centralizer sweep", total > std::numeric_limits<std::uint64_t>::max() ? ~0ULL : static_cast<std::uint64_t>(total), cap);
  const auto count = static_cast<std::uint64_t>(total);
  profile.det_histogram = kernels::tally(exec, count, p, [&](std::uint64_t index) {
    auto x = MatrixFq::zero_like(like);
    for (const auto& b : basis) {
      const auto c = static_cast<std::uint32_t>(index % p);
      index /= p;
      if (c == 0) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = F.add(x(i, j), F.mul(c, b(i, j)));
    }
    const auto det = x.determinant();
    if (det == 0 || !keep(x)) return std::size_t{0};
    return static_cast<std::size_t>(det);
  });
  return profile;
}

}  // namespace

CentralizerProfile centralizer_profile(const MatrixFq& h, std::uint64_t cap, kernels::Exec exec) {
  return sweep_span(h, commutant_basis(h), cap, exec, [](const MatrixFq&) { return true; });
}

CentralizerProfile twisted_centralizer_profile(const MatrixFq& h, std::uint64_t cap, kernels::Exec exec) {
  // g h twist(g)^{-1} = h  <=>  g M g^T = M with M = hJ; such g commute with M^T M^{-1}.
  const auto m = h * matfq::flip_pinning(h.n(), h.p());
  const auto mt = m.transpose();
  return sweep_span(h, commutant_basis(mt * m.inverse()), cap, exec,
                    [&](const MatrixFq& g) { return g * m * g.transpose() == m; });
}

BigInt centralizer_order(const MatrixFq& h, const GroupSpec& spec, std::uint64_t cap) {
  if (!spec.contains(h)) throw Error("element is not in " + spec.to_string());
  const auto profile =
      spec.twist() == TwistKind::trivial ? centralizer_profile(h, cap) : twisted_centralizer_profile(h, cap);
  return spec.family() == GroupFamily::GL ? profile.gl_order() : profile.sl_order();
}

// ---------------------------------------------------------------- regularity

FpPoly characteristic_polynomial(const MatrixFq& h) {
  const int n = h.n();
  const matfq::PrimeField F = matfq::PrimeField::trusted(h.p());
  // det(xI - h) by expansion over permutations.
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  FpPoly total;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    FpPoly term{1};
    for (int i = 0; i < n; ++i) {
      const int j = perm[static_cast<std::size_t>(i)];
      FpPoly entry{F.neg(h(i, j))};
      if (i == j) entry.push_back(1);
      trim(entry);
      term = mul(term, entry, F);
      if (term.empty()) break;
    }
    if (inversions % 2) term = scale(term, F.neg(1), F);
    total = add(total, term, F);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

FpPoly minimal_polynomial(const MatrixFq& h) {
  const int n = h.n();
  const matfq::PrimeField F = matfq::PrimeField::trusted(h.p());
  const auto len = static_cast<std::size_t>(n * n);
  struct Row {
    std::vector<std::uint32_t> v;
    FpPoly combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  auto power = MatrixFq::identity(n, h.p());
  for (int k = 0; k <= n; ++k) {
    std::vector<std::uint32_t> v(len);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i * n + j)] = power(i, j);
    FpPoly combo(static_cast<std::size_t>(k) + 1, 0);
    combo.back() = 1;
    for (const auto& r : rows) {
      const auto f = v[r.pivot];
      if (f == 0) continue;
      for (std::size_t t = 0; t < len; ++t) v[t] = F.sub(v[t], F.mul(f, r.v[t]));
      for (std::size_t t = 0; t < r.combo.size(); ++t) combo[t] = F.sub(combo[t], F.mul(f, r.combo[t]));
    }
    auto nz = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
    if (nz == v.end()) {
      trim(combo);
      return combo;
    }
    const auto pivot = static_cast<std::size_t>(nz - v.begin());
    const auto inv = F.inv(v[pivot]);
    for (auto& x : v) x = F.mul(x, inv);
    for (auto& x : combo) x = F.mul(x, inv);
    rows.push_back({std::move(v), std::move(combo), pivot});
    power = power * h;
  }
  throw Error("minimal polynomial exceeds the matrix size");
}

std::string poly_to_string(const FpPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(f); k >= 0; --k) {
    const auto c = f[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (c != 1 || k == 0) out << c;
    if (k > 0) out << (k == 1 ? "x" : "x^" + std::to_string(k));
  }
  return out.str();
}

std::string degrees_to_string(const std::vector<int>& degrees) {
  std::string out;
  for (auto d : degrees) out += (out.empty() ? "" : ",") + std::to_string(d);
  return out;
}

std::string to_string(RegularKind kind) {
  switch (kind) {
    case RegularKind::split: return "regular-semisimple-split";
    case RegularKind::nonsplit: return "regular-semisimple-nonsplit";
    case RegularKind::unipotent: return "regular-unipotent";
    case RegularKind::mixed: return "regular-mixed";
    case RegularKind::not_regular: return "not-regular";
    case RegularKind::twisted: return "regular-twisted";
  }
  return "?";
}

RegularKind parse_regular_kind(std::string_view text) {
  for (auto k : {RegularKind::split, RegularKind::nonsplit, RegularKind::unipotent, RegularKind::mixed,
                 RegularKind::not_regular, RegularKind::twisted})
    if (text == to_string(k)) return k;
  if (text == "split") return RegularKind::split;
  if (text == "nonsplit") return RegularKind::nonsplit;
  if (text == "unipotent") return RegularKind::unipotent;
  if (text == "mixed") return RegularKind::mixed;
  if (text == "twisted") return RegularKind::twisted;
  throw ParseError("unknown regularity kind '" + std::string(text) + "'");
}

RegularityCertificate is_regular(const MatrixFq& h, const GroupSpec& spec) {
  if (spec.twist() != TwistKind::trivial)
    throw Error("twisted regularity is decided empirically; use is_regular_twisted");
  if (!spec.contains(h)) throw Error("element is not in " + spec.to_string());
  const matfq::PrimeField F = matfq::PrimeField::trusted(h.p());
  const auto cp = characteristic_polynomial(h);
  const auto mp = minimal_polynomial(h);
  RegularityCertificate cert;
  if (degree(mp) < h.n()) {
    cert.kind = RegularKind::not_regular;
    cert.evidence = "minimal polynomial " + poly_to_string(mp) + " has degree " + std::to_string(degree(mp)) +
                    " < " + std::to_string(h.n());
    return cert;
  }
  FpPoly unipotent{1};
  for (int i = 0; i < h.n(); ++i) unipotent = mul(unipotent, FpPoly{F.neg(1), 1}, F);
  const bool squarefree = degree(gcd(cp, derivative(cp, F), F)) == 0;
  int roots = 0;
  for (std::uint32_t a = 0; a < h.p(); ++a) roots += evaluate(cp, a, F) == 0;
  cert.factor_degrees = distinct_factor_degrees(cp, F);
  if (cp == unipotent) {
    cert.kind = RegularKind::unipotent;
  } else if (squarefree) {
    cert.kind = roots == h.n() ? RegularKind::split : RegularKind::nonsplit;
  } else {
    cert.kind = RegularKind::mixed;
  }
  cert.evidence = "minimal polynomial = characteristic polynomial = " + poly_to_string(cp) + "; " +
                  std::to_string(roots) + " distinct roots in F_" + std::to_string(h.p()) +
                  (squarefree ? ", squarefree" : ", repeated factors") + ", irreducible factor degrees " +
                  degrees_to_string(cert.factor_degrees);
  return cert;
}

RegularityCertificate is_regular_twisted(const std::map<std::uint32_t, BigInt>& centralizer_orders,
                                         int dim_fixed_torus) {
  if (centralizer_orders.size() < 3)
    throw Error("twisted regularity needs centralizer orders at three or more primes");
  std::vector<std::pair<BigInt, BigInt>> points;
  for (const auto& [p, order] : centralizer_orders) points.emplace_back(p, order);
  const auto fit = lagrange_interpolate(std::span(points).first(points.size() - 1));
  const auto& last = points.back();
  RegularityCertificate cert;
  std::ostringstream evidence;
  if (fit.evaluate(Rational(last.first)) != Rational(last.second)) {
    cert.kind = RegularKind::not_regular;
    evidence << "centralizer orders are not polynomial of degree <= " << points.size() - 2
             << " at the sampled primes";
  } else {
    cert.kind = fit.degree() == dim_fixed_torus ? RegularKind::twisted : RegularKind::not_regular;
    evidence << "centralizer order fits " << fit.to_string() << " of degree " << fit.degree()
             << "; fixed torus has dimension " << dim_fixed_torus;
  }
  cert.evidence = evidence.str();
  return cert;
}

// ---------------------------------------------------------------- Steinberg

SteinbergWitness steinberg_representative(const TwistedClassOrbit& orbit,
                                          std::span<const TwistedClassOrbit> siblings) {
  auto search = [](const TwistedClassOrbit& o) -> std::optional<MatrixFq> {
    if (o.base().is_lower_triangular()) return o.base();
    for (std::size_t i = 0; i < o.size(); ++i) {
      auto g = o.element(i);
      if (g.is_lower_triangular()) return g;
    }
    return std::nullopt;
  };
  if (auto g = search(orbit)) return {*g, 0};
  for (std::size_t i = 0; i < siblings.size(); ++i)
    if (auto g = search(siblings[i])) return {*g, i + 1};
  throw NotFound("no lower triangular element in the orbit of " + orbit.base().to_string() + " or its siblings");
}

// ---------------------------------------------------------------- flags

FlagReps::FlagReps(const GroupSpec& spec, std::uint64_t cap) : spec_(spec) {
  const auto group = coxeter::WeylGroup::get(spec.weyl_datum());
  BigInt total = 0;
  for (const auto& w : group->elements()) total += power(spec.p(), w.length());
  if (total > cap)
    throw CapExceeded("flag enumeration",
                      total > std::numeric_limits<std::uint64_t>::max() ? ~0ULL : static_cast<std::uint64_t>(total), cap);
  const int n = spec.n();
  std::uint64_t offset = 0;
  for (const auto& w : group->elements()) {
    const auto sigma = matfq::permutation_of(w);
    std::array<int, matfq::kMaxDim> where{};
    for (int j = 0; j < n; ++j) where[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] = j;
    Cell cell{offset, spec.representative(w), {}};
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (where[static_cast<std::size_t>(a)] > where[static_cast<std::size_t>(b)]) cell.free_entries.emplace_back(a, b);
    offset += static_cast<std::uint64_t>(power(spec.p(), w.length()));
    cells_.push_back(std::move(cell));
  }
  total_ = offset;
}

std::size_t FlagReps::cell_of(std::uint64_t index) const {
  auto it = std::upper_bound(cells_.begin(), cells_.end(), index,
                             [](std::uint64_t i, const Cell& c) { return i < c.offset; });
  return static_cast<std::size_t>(it - cells_.begin()) - 1;
}

MatrixFq FlagReps::at(std::uint64_t index) const {
  if (index >= total_) throw Error("flag index out of range");
  const auto& cell = cells_[cell_of(index)];
  auto local = index - cell.offset;
  auto u = MatrixFq::identity(spec_.n(), spec_.p());
  for (const auto& [a, b] : cell.free_entries) {
    u(a, b) = static_cast<std::uint32_t>(local % spec_.p());
    local /= spec_.p();
  }
  return u * cell.w_dot;
}

// ---------------------------------------------------------------- fusion

GeometricClass geometric_class(const MatrixFq& h, const GroupSpec& spec, std::uint64_t cap) {
  if (spec.twist() != TwistKind::trivial) throw Error("geometric fusion is computed for untwisted groups only");
  if (!spec.contains(h)) throw Error("element is not in " + spec.to_string());
  const auto profile = centralizer_profile(h, cap);
  GeometricClass out;
  if (spec.family() == GroupFamily::GL) {
    out.representatives.push_back(h);
    out.centralizer_orders.push_back(profile.gl_order());
    return out;
  }
  const auto k = (spec.p() - 1) / profile.det_image_size();
  const auto r = matfq::PrimeField(spec.p()).primitive_root();
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto d = diag_power(spec.n(), spec.p(), r, static_cast<int>(i));
    out.representatives.push_back(d * h * d.inverse());
    out.centralizer_orders.push_back(profile.sl_order());
  }
  return out;
}

std::vector<TwistedClassOrbit> fused_orbits_by_search(const MatrixFq& h, const GroupSpec& spec,
                                                      std::uint64_t cap) {
  if (spec.twist() != TwistKind::trivial) throw Error("orbit fusion search needs an untwisted group");
  const auto whole = orbit(h, spec.with_family(GroupFamily::GL), cap);
  std::vector<TwistedClassOrbit> out;
  if (spec.family() == GroupFamily::GL) {
    out.push_back(whole);
    return out;
  }
  std::vector<bool> assigned(whole.size(), false);
  for (std::size_t i = 0; i < whole.size(); ++i) {
    if (assigned[i]) continue;
    auto part = orbit(whole.element(i), spec, cap);
    for (auto key : part.keys()) {
      auto it = std::lower_bound(whole.keys().begin(), whole.keys().end(), key);
      assigned[static_cast<std::size_t>(it - whole.keys().begin())] = true;
    }
    out.push_back(std::move(part));
  }
  return out;
}

// ---------------------------------------------------------------- templates

ElementTemplate ElementTemplate::parse(std::string_view text) {
  ElementTemplate t;
  t.text_ = std::string(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("element template needs a kind prefix: '" + t.text_ + "'");
  const auto kind = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (kind == "diag") {
    t.kind_ = Kind::diag;
    t.values_ = parse_integer_list(body, ',');
    t.n_ = static_cast<int>(t.values_.size());
  } else if (kind == "jordan") {
    t.kind_ = Kind::jordan;
    t.values_ = parse_integer_list(body, ':');
    if (t.values_.size() != 2) throw ParseError("jordan template is jordan:<size>:<eigenvalue>");
    t.n_ = static_cast<int>(t.values_[0]);
  } else if (kind == "companion") {
    t.kind_ = Kind::companion;
    t.values_ = parse_integer_list(body, ',');
    if (t.values_.size() < 2 || t.values_.front() != 1)
      throw ParseError("companion template needs monic coefficients, leading coefficient first");
    t.n_ = static_cast<int>(t.values_.size()) - 1;
  } else if (kind == "literal") {
    t.kind_ = Kind::literal;
    t.literal_ = std::string(body);
    t.n_ = static_cast<int>(std::count(body.begin(), body.end(), ';')) + 1;
  } else {
    throw ParseError("unknown element template kind '" + std::string(kind) + "'");
  }
  if (t.n_ < 1 || t.n_ > matfq::kMaxDim) throw ParseError("template size out of range: '" + t.text_ + "'");
  return t;
}

MatrixFq ElementTemplate::instantiate(std::uint32_t p) const {
  switch (kind_) {
    case Kind::diag:
      return MatrixFq::diagonal(values_, p);
    case Kind::jordan: {
      std::vector<std::vector<long long>> rows(static_cast<std::size_t>(n_), std::vector<long long>(static_cast<std::size_t>(n_), 0));
      for (int i = 0; i < n_; ++i) {
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = values_[1];
        if (i + 1 < n_) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = 1;
      }
      return MatrixFq::from_rows(rows, p);
    }
    case Kind::companion: {
      // Subdiagonal ones; last column holds -c_0, ..., -c_{n-1}.
      std::vector<std::vector<long long>> rows(static_cast<std::size_t>(n_), std::vector<long long>(static_cast<std::size_t>(n_), 0));
      for (int i = 1; i < n_; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1;
      for (int j = 0; j < n_; ++j)
        rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(n_ - 1)] = -values_[static_cast<std::size_t>(n_ - j)];
      return MatrixFq::from_rows(rows, p);
    }
    case Kind::literal:
      return MatrixFq::parse(literal_, p);
  }
  throw Error("unreachable template kind");
}

}  // namespace lvc::chevalley
