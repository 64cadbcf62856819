#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvc/coxeter.hpp"
#include "lvc/kernels.hpp"
#include "lvc/matfq.hpp"
#include "lvc/polynomial.hpp"

namespace lvc::chevalley {

using matfq::MatrixFq;
using matfq::MatrixKey;
using matfq::TwistKind;

enum class GroupFamily { GL, SL };

GroupFamily parse_family(std::string_view text);
std::string to_string(GroupFamily family);

inline constexpr std::uint64_t kDefaultOrbitCap = 10'000'000;
inline constexpr std::uint64_t kDefaultFlagCap = 1'000'000;
inline constexpr std::uint64_t kDefaultUnipotentCap = 1'000'000;
inline constexpr std::uint64_t kDefaultCentralizerCap = 10'000'000;

/// GL_n(F_p) or SL_n(F_p) together with the automorphism used for twisted
/// conjugation. The Borel subgroup is the upper triangular one.
class GroupSpec {
 public:
  GroupSpec(GroupFamily family, int n, std::uint32_t p, TwistKind twist = TwistKind::trivial);

  GroupFamily family() const noexcept { return family_; }
  int n() const noexcept { return n_; }
  std::uint32_t p() const noexcept { return p_; }
  TwistKind twist() const noexcept { return twist_; }
  /// The flip does not act trivially on the center of GL_n.
  bool center_caveat() const noexcept { return family_ == GroupFamily::GL && twist_ == TwistKind::flip; }

  GroupSpec with_prime(std::uint32_t p) const { return {family_, n_, p, twist_}; }
  GroupSpec with_family(GroupFamily family) const { return {family, n_, p_, twist_}; }

  BigInt order() const;
  BigInt borel_order() const;
  std::uint64_t num_flags() const;

  /// Type A_{n-1}.
  coxeter::CoxeterDatum weyl_datum() const { return {coxeter::Family::A, n_ - 1}; }
  /// The automorphism of W induced by the twist.
  coxeter::DiagramAutomorphism weyl_automorphism() const;

  int dim_borel() const noexcept;
  int dim_torus() const noexcept { return family_ == GroupFamily::GL ? n_ : n_ - 1; }
  /// Dimension of the fixed torus, from the twist's action on cocharacters.
  int dim_fixed_torus() const;

  bool contains(const MatrixFq& g) const;
  /// Permutation matrix of w; for SL, column 0 is negated when w is odd.
  MatrixFq representative(const coxeter::WeylElement& w) const;
  /// Transvections e_ij(1), diag(r, r^{-1}, 1, ...) and, for GL, diag(r, 1, ...),
  /// with r the smallest primitive root.
  std::vector<MatrixFq> generators() const;

  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupFamily family_;
  int n_;
  std::uint32_t p_;
  TwistKind twist_;
};

inline BigInt group_order(const GroupSpec& spec) { return spec.order(); }

/// g · h · twist(g)^{-1}. Throws Error when g or h is outside the group.
MatrixFq twisted_conjugate(const MatrixFq& g, const MatrixFq& h, const GroupSpec& spec);

/// A G^F-orbit under twisted conjugation.
class TwistedClassOrbit {
 public:
  TwistedClassOrbit(GroupSpec spec, MatrixFq base, std::vector<MatrixKey> sorted_keys);

  const GroupSpec& spec() const noexcept { return spec_; }
  const MatrixFq& base() const noexcept { return base_; }
  std::uint64_t size() const noexcept { return keys_.size(); }
  const std::vector<MatrixKey>& keys() const noexcept { return keys_; }
  MatrixFq element(std::size_t i) const { return MatrixFq::from_key(keys_[i], spec_.n(), spec_.p()); }
  bool contains(const MatrixFq& g) const;
  /// |G^F| / |orbit|.
  const BigInt& centralizer_order() const noexcept { return centralizer_order_; }

 private:
  GroupSpec spec_;
  MatrixFq base_;
  std::vector<MatrixKey> keys_;
  BigInt centralizer_order_;
};

TwistedClassOrbit orbit(const MatrixFq& h, const GroupSpec& spec, std::uint64_t cap = kDefaultOrbitCap,
                        kernels::Exec exec = kernels::Exec::parallel);

/// Untwisted centralizer of h in GL_n(F_p), swept over the solution space
/// of Xh = hX. `det_histogram[d]` counts centralizing X with det X = d.
struct CentralizerProfile {
  int linear_dimension = 0;
  std::vector<std::uint64_t> det_histogram;

  BigInt gl_order() const;
  BigInt sl_order() const { return det_histogram.size() > 1 ? BigInt(det_histogram[1]) : BigInt(0); }
  /// |det(Z_GL(h))| as a subgroup of F_p^x.
  std::uint32_t det_image_size() const;
};

CentralizerProfile centralizer_profile(const MatrixFq& h, std::uint64_t cap = kDefaultCentralizerCap,
                                       kernels::Exec exec = kernels::Exec::parallel);

/// Flip-twisted centralizer {g : g h twist(g)^{-1} = h} in GL_n(F_p), swept
/// over the commutant of M^T M^{-1} with M = hJ.
CentralizerProfile twisted_centralizer_profile(const MatrixFq& h, std::uint64_t cap = kDefaultCentralizerCap,
                                               kernels::Exec exec = kernels::Exec::parallel);

/// |Z_{G,δ}(h)| via the linear route, twisted or not.
BigInt centralizer_order(const MatrixFq& h, const GroupSpec& spec, std::uint64_t cap = kDefaultCentralizerCap);

/// Polynomials over F_p as residue lists, lowest degree first.
using FpPoly = std::vector<std::uint32_t>;

FpPoly characteristic_polynomial(const MatrixFq& h);
FpPoly minimal_polynomial(const MatrixFq& h);
std::string poly_to_string(const FpPoly& f);

/// `twisted` is the empirical certificate for twisted groups, where the
/// semisimple/unipotent shape is not classified.
enum class RegularKind { split, nonsplit, unipotent, mixed, not_regular, twisted };

std::string to_string(RegularKind kind);
RegularKind parse_regular_kind(std::string_view text);
/// "1,2" for {1, 2}.
std::string degrees_to_string(const std::vector<int>& degrees);

struct RegularityCertificate {
  RegularKind kind = RegularKind::not_regular;
  std::string evidence;
  /// Degree of each distinct irreducible factor of the characteristic
  /// polynomial, ascending. Empty when not computed.
  std::vector<int> factor_degrees;

  bool regular() const noexcept { return kind != RegularKind::not_regular; }
};

/// Untwisted certificate from the minimal and characteristic polynomials.
/// Throws Error for twisted specs; use `is_regular_twisted`.
RegularityCertificate is_regular(const MatrixFq& h, const GroupSpec& spec);

/// Empirical twisted certificate: fits |Z_{G,δ}(h)| as a polynomial in p and
/// compares its degree with dim T^δ. Needs at least three primes.
RegularityCertificate is_regular_twisted(const std::map<std::uint32_t, BigInt>& centralizer_orders,
                                         int dim_fixed_torus);

struct SteinbergWitness {
  MatrixFq element;
  /// 0 for the orbit itself, i + 1 for siblings[i].
  std::size_t orbit_index = 0;
};

/// A lower triangular element of the orbit, or of the first sibling orbit
/// containing one. Throws NotFound when none has one.
SteinbergWitness steinberg_representative(const TwistedClassOrbit& orbit,
                                          std::span<const TwistedClassOrbit> siblings = {});

/// One representative u·ẇ per coset of B^F, cell by cell in the order of
/// the enumerated Weyl group, with u ∈ U ∩ ẇU⁻ẇ⁻¹.
class FlagReps {
 public:
  explicit FlagReps(const GroupSpec& spec, std::uint64_t cap = kDefaultFlagCap);

  std::uint64_t size() const noexcept { return total_; }
  MatrixFq at(std::uint64_t index) const;
  /// Cell index (in enumerate_group order) of the representative.
  std::size_t cell_of(std::uint64_t index) const;

 private:
  struct Cell {
    std::uint64_t offset;
    MatrixFq w_dot;
    std::vector<std::pair<int, int>> free_entries;
  };
  GroupSpec spec_;
  std::vector<Cell> cells_;
  std::uint64_t total_ = 0;
};

inline FlagReps enumerate_flag_reps(const GroupSpec& spec, std::uint64_t cap = kDefaultFlagCap) {
  return FlagReps(spec, cap);
}

/// Rational points of the geometric class of h, as G^F-orbit representatives
/// fused under GL_n-conjugacy: h_i = d_i h d_i^{-1} with d_i = diag(r^i, 1, ...).
struct GeometricClass {
  std::vector<MatrixFq> representatives;
  std::vector<BigInt> centralizer_orders;

  std::size_t k() const noexcept { return representatives.size(); }
};

/// Untwisted specs only.
GeometricClass geometric_class(const MatrixFq& h, const GroupSpec& spec,
                               std::uint64_t cap = kDefaultCentralizerCap);

/// Brute-force fusion: the GL_n(F_p)-orbit of h split into G^F-orbits.
/// Orbits are listed by their smallest key.
std::vector<TwistedClassOrbit> fused_orbits_by_search(const MatrixFq& h, const GroupSpec& spec,
                                                      std::uint64_t cap = kDefaultOrbitCap);

/// Scenario element templates: "diag:1,2,3", "jordan:3:1" (size:eigenvalue),
/// "companion:1,-1,-1" (monic coefficients, leading first: x^2 - x - 1) and
/// "literal:<matrix literal>".
class ElementTemplate {
 public:
  static ElementTemplate parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  int dimension() const noexcept { return n_; }
  MatrixFq instantiate(std::uint32_t p) const;

 private:
  enum class Kind { diag, jordan, companion, literal };
  std::string text_;
  Kind kind_ = Kind::diag;
  int n_ = 0;
  std::vector<long long> values_;
  std::string literal_;
};

}  // namespace lvc::chevalley
