#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lvc/chevalley.hpp"
#include "lvc/interpolation.hpp"

namespace lvc::counting {

using chevalley::GroupSpec;
using chevalley::MatrixFq;
using chevalley::TwistedClassOrbit;
using coxeter::WeylElement;
using kernels::Exec;

/// Per-Weyl-element tallies, indexed like `WeylGroup::get(spec.weyl_datum())`.
using CellTally = std::vector<std::uint64_t>;

/// |orbit ∩ BẇB| for every w.
CellTally class_cell_counts(const TwistedClassOrbit& orbit, Exec exec = Exec::parallel);
std::uint64_t count_class_cell(const TwistedClassOrbit& orbit, const WeylElement& w);

/// Number of flags gB with g⁻¹·h·twist(g) ∈ BẇB, for every w.
CellTally lusztig_counts(const GroupSpec& spec, const MatrixFq& h,
                         std::uint64_t flag_cap = chevalley::kDefaultFlagCap, Exec exec = Exec::parallel);
std::uint64_t count_lusztig(const GroupSpec& spec, const MatrixFq& h, const WeylElement& w,
                            std::uint64_t flag_cap = chevalley::kDefaultFlagCap);

/// |(ẇ')⁻¹U⁻twist(ẇ') ∩ BẇB| for every w, at fixed w'.
CellTally unipotent_cell_counts(const GroupSpec& spec, const WeylElement& w_prime,
                                std::uint64_t cap = chevalley::kDefaultUnipotentCap, Exec exec = Exec::parallel);
std::uint64_t count_unipotent_cell(const GroupSpec& spec, const WeylElement& w, const WeylElement& w_prime,
                                   std::uint64_t cap = chevalley::kDefaultUnipotentCap);

/// The five integers of |Y|·|B|·|orbit| = |G|·|orbit ∩ BẇB|.
struct KawanakaCheck {
  BigInt lusztig;
  BigInt borel;
  BigInt orbit_size;
  BigInt group;
  BigInt class_cell;

  BigInt lhs() const { return lusztig * borel * orbit_size; }
  BigInt rhs() const { return group * class_cell; }
  bool holds() const { return lhs() == rhs(); }
};

KawanakaCheck kawanaka_check(const GroupSpec& spec, const TwistedClassOrbit& orbit, const WeylElement& w,
                             std::uint64_t flag_cap = chevalley::kDefaultFlagCap);
/// Same identity from precomputed tallies.
KawanakaCheck kawanaka_check(const GroupSpec& spec, const TwistedClassOrbit& orbit, std::uint64_t lusztig,
                             std::uint64_t class_cell);

/// |C^F ∩ BẇB| for every w, assembled from the rational orbits of the
/// geometric class as Σ_i |Y_{w,h_i}|·|B^F| / |Z(h_i)|. Untwisted only.
std::vector<BigInt> geometric_cell_counts(const GroupSpec& spec, const MatrixFq& h,
                                          std::uint64_t flag_cap = chevalley::kDefaultFlagCap,
                                          std::uint64_t centralizer_cap = chevalley::kDefaultCentralizerCap);

struct PointCountSeries {
  std::string scenario;
  std::string quantity;
  std::map<std::uint32_t, BigInt> counts;
};

struct FittedPolynomial {
  RationalPolynomial polynomial;
  int degree = -1;
  bool is_integer_coefficients = false;
  bool is_monic = false;
  Rational leading_coefficient = 0;
  std::size_t points_used = 0;
  std::size_t points_checked = 0;
};

/// Exact interpolation through the first degree_bound + 1 points; every
/// further point must lie on the curve. Throws FitError.
FittedPolynomial fit_polynomial(const PointCountSeries& series, int degree_bound);

/// fit_polynomial with the largest bound the series supports (size - 2).
FittedPolynomial fit_polynomial(const PointCountSeries& series);

}  // namespace lvc::counting
