#include "lvc/counting.hpp"

#include <algorithm>
#include <limits>

#include "lvc/error.hpp"

namespace lvc::counting {

namespace {

/// Maps permutation ranks of S_n to indices of the enumerated A_{n-1}.
class CellIndex {
 public:
  explicit CellIndex(int n) : n_(n) {
    const auto group = coxeter::WeylGroup::get({coxeter::Family::A, n - 1});
    size_ = group->size();
    table_.assign(size_, 0);
    for (std::size_t i = 0; i < size_; ++i)
      table_[matfq::permutation_rank(matfq::permutation_of((*group)[i]), n)] = i;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t operator()(const MatrixFq& g) const {
    return table_[matfq::permutation_rank(matfq::bruhat_permutation(g), n_)];
  }

 private:
  int n_;
  std::size_t size_ = 0;
  std::vector<std::size_t> table_;
};

std::size_t index_of(const GroupSpec& spec, const WeylElement& w) {
  if (w.datum() != spec.weyl_datum()) throw MismatchError("Weyl element does not belong to " + spec.to_string());
  return coxeter::WeylGroup::get(spec.weyl_datum())->index_of(w);
}

}  // namespace

CellTally class_cell_counts(const TwistedClassOrbit& orbit, Exec exec) {
  const CellIndex cells(orbit.spec().n());
  return kernels::tally(exec, orbit.size(), cells.size(),
                        [&](std::uint64_t i) { return cells(orbit.element(static_cast<std::size_t>(i))); });
}

std::uint64_t count_class_cell(const TwistedClassOrbit& orbit, const WeylElement& w) {
  return class_cell_counts(orbit)[index_of(orbit.spec(), w)];
}

CellTally lusztig_counts(const GroupSpec& spec, const MatrixFq& h, std::uint64_t flag_cap, Exec exec) {
  if (!spec.contains(h)) throw Error("element is not in " + spec.to_string());
  const chevalley::FlagReps flags(spec, flag_cap);
  const CellIndex cells(spec.n());
  const auto kind = spec.twist();
  return kernels::tally(exec, flags.size(), cells.size(), [&](std::uint64_t i) {
    const auto g = flags.at(i);
    return cells(g.inverse() * h * matfq::twist(g, kind));
  });
}

std::uint64_t count_lusztig(const GroupSpec& spec, const MatrixFq& h, const WeylElement& w, std::uint64_t flag_cap) {
  return lusztig_counts(spec, h, flag_cap)[index_of(spec, w)];
}

CellTally unipotent_cell_counts(const GroupSpec& spec, const WeylElement& w_prime, std::uint64_t cap, Exec exec) {
  const int n = spec.n();
  const auto p = spec.p();
  const int entries = n * (n - 1) / 2;
  BigInt total = 1;
  for (int i = 0; i < entries; ++i) total *= p;
  if (total > cap) throw CapExceeded("unipotent sweep", total > std::numeric_limits<std::uint64_t>::max() ? ~0ULL : static_cast<std::uint64_t>(total), cap);
  const auto w_dot = spec.representative(w_prime);
  const auto left = w_dot.inverse();
  const auto right = matfq::twist(w_dot, spec.twist());
  const CellIndex cells(n);
  return kernels::tally(exec, static_cast<std::uint64_t>(total), cells.size(), [&](std::uint64_t index) {
    auto u = MatrixFq::identity(n, p);
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        u(i, j) = static_cast<std::uint32_t>(index % p);
        index /= p;
      }
    return cells(left * u * right);
  });
}

std::uint64_t count_unipotent_cell(const GroupSpec& spec, const WeylElement& w, const WeylElement& w_prime,
                                   std::uint64_t cap) {
  return unipotent_cell_counts(spec, w_prime, cap)[index_of(spec, w)];
}

KawanakaCheck kawanaka_check(const GroupSpec& spec, const TwistedClassOrbit& orbit, const WeylElement& w,
                             std::uint64_t flag_cap) {
  return kawanaka_check(spec, orbit, count_lusztig(spec, orbit.base(), w, flag_cap), count_class_cell(orbit, w));
}

KawanakaCheck kawanaka_check(const GroupSpec& spec, const TwistedClassOrbit& orbit, std::uint64_t lusztig,
                             std::uint64_t class_cell) {
  return {lusztig, spec.borel_order(), orbit.size(), spec.order(), class_cell};
}

std::vector<BigInt> geometric_cell_counts(const GroupSpec& spec, const MatrixFq& h, std::uint64_t flag_cap,
                                          std::uint64_t centralizer_cap) {
  const auto geo = chevalley::geometric_class(h, spec, centralizer_cap);
  const auto borel = spec.borel_order();
  std::vector<BigInt> total;
  for (std::size_t i = 0; i < geo.k(); ++i) {
    const auto y = lusztig_counts(spec, geo.representatives[i], flag_cap);
    total.resize(y.size(), BigInt(0));
    for (std::size_t c = 0; c < y.size(); ++c) {
      const BigInt scaled = BigInt(y[c]) * borel;
      if (scaled % geo.centralizer_orders[i] != 0) throw Error("class-cell count is not an integer");
      total[c] += scaled / geo.centralizer_orders[i];
    }
  }
  return total;
}

FittedPolynomial fit_polynomial(const PointCountSeries& series, int degree_bound) {
  if (degree_bound < 0) throw FitError("degree bound must be nonnegative");
  const auto needed = static_cast<std::size_t>(degree_bound) + 2;
  if (series.counts.size() < needed)
    throw FitError("insufficient points: " + std::to_string(series.counts.size()) + " primes for degree bound " +
                   std::to_string(degree_bound) + " (need " + std::to_string(needed) + ")");
  std::vector<std::pair<BigInt, BigInt>> points;
  for (const auto& [p, c] : series.counts) points.emplace_back(p, c);
  const auto used = static_cast<std::size_t>(degree_bound) + 1;
  FittedPolynomial fit;
  fit.polynomial = lagrange_interpolate(std::span(points).first(used));
  for (std::size_t i = used; i < points.size(); ++i) {
    if (fit.polynomial.evaluate(Rational(points[i].first)) != Rational(points[i].second))
      throw FitError("not polynomial of claimed degree at sampled primes: " + series.quantity + " at p=" +
                     points[i].first.str() + " is " + points[i].second.str() + ", fit " + fit.polynomial.to_string() +
                     " predicts " + fit.polynomial.evaluate(Rational(points[i].first)).str());
  }
  fit.degree = fit.polynomial.degree();
  fit.is_integer_coefficients = fit.polynomial.has_integer_coefficients();
  fit.leading_coefficient = fit.polynomial.leading_coefficient();
  fit.is_monic = fit.leading_coefficient == 1;
  fit.points_used = used;
  fit.points_checked = points.size() - used;
  return fit;
}

FittedPolynomial fit_polynomial(const PointCountSeries& series) {
  if (series.counts.size() < 2) throw FitError("insufficient points: need at least 2 primes");
  return fit_polynomial(series, static_cast<int>(series.counts.size()) - 2);
}

}  // namespace lvc::counting
