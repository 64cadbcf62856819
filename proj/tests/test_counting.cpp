#include "doctest.h"
#include "lvc/counting.hpp"
#include "lvc/error.hpp"
#include "lvc/hecke.hpp"

using namespace lvc;
using namespace lvc::counting;
using chevalley::ElementTemplate;
using chevalley::GroupFamily;
using matfq::TwistKind;

namespace {

std::vector<MatrixFq> all_elements(const GroupSpec& spec) {
  std::vector<MatrixFq> out;
  const int n = spec.n();
  const auto p = spec.p();
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    MatrixFq m(n, p);
    auto c = code;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m(i, j) = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
    if (spec.contains(m)) out.push_back(m);
  }
  return out;
}

// Oracle: |Y_{w,h}| as #{g in G : g^{-1} h twist(g) in BwB} / |B|, summed over
// the whole group instead of coset representatives.
CellTally brute_lusztig(const GroupSpec& spec, const MatrixFq& h) {
  const auto group = coxeter::WeylGroup::get(spec.weyl_datum());
  CellTally out(group->size(), 0);
  for (const auto& g : all_elements(spec)) {
    auto x = g.inverse() * h * matfq::twist(g, spec.twist());
    ++out[group->index_of(matfq::bruhat_word(x).w)];
  }
  const auto borel = static_cast<std::uint64_t>(spec.borel_order());
  for (auto& c : out) {
    REQUIRE(c % borel == 0);
    c /= borel;
  }
  return out;
}

WeylElement word(const GroupSpec& spec, std::vector<int> letters) {
  return WeylElement::from_word(spec.weyl_datum(), letters);
}

}  // namespace

TEST_CASE("class cell and Lusztig examples in GL2(F3)") {
  GroupSpec gl2(GroupFamily::GL, 2, 3);
  auto h = MatrixFq::parse("1 0; 0 2", 3);
  auto o = chevalley::orbit(h, gl2);
  auto e = word(gl2, {});
  auto s = word(gl2, {1});
  CHECK(count_class_cell(o, e) == 6);
  CHECK(count_class_cell(o, s) == 6);
  CHECK(count_lusztig(gl2, h, s) == 2);
  CHECK(count_lusztig(gl2, h, e) == 2);

  auto check = kawanaka_check(gl2, o, s);
  CHECK(check.lhs() == 2 * 12 * 12);
  CHECK(check.rhs() == 48 * 6);
  CHECK(check.holds());
  CHECK(kawanaka_check(gl2, o, e).holds());

  auto central = chevalley::orbit(MatrixFq::parse("2 0; 0 2", 3), gl2);
  auto cc = kawanaka_check(gl2, central, e);
  CHECK(cc.lusztig == 4);
  CHECK(cc.lhs() == 48);
  CHECK(cc.holds());
}

TEST_CASE("unipotent cell examples") {
  GroupSpec gl2(GroupFamily::GL, 2, 3);
  CHECK(count_unipotent_cell(gl2, word(gl2, {1}), word(gl2, {})) == 2);
  CHECK(count_unipotent_cell(gl2, word(gl2, {}), word(gl2, {})) == 1);
  for (auto spec : {gl2, GroupSpec(GroupFamily::GL, 3, 3), GroupSpec(GroupFamily::SL, 3, 2, TwistKind::flip)}) {
    for (const auto& wp : coxeter::enumerate_group(spec.weyl_datum())) {
      std::uint64_t total = 0;
      for (auto c : unipotent_cell_counts(spec, wp)) total += c;
      std::uint64_t expected = 1;
      for (int i = 0; i < spec.n() * (spec.n() - 1) / 2; ++i) expected *= spec.p();
      CHECK(total == expected);
    }
  }
  GroupSpec gl4(GroupFamily::GL, 4, 7);
  CHECK_THROWS_AS(unipotent_cell_counts(gl4, word(gl4, {}), 1000), CapExceeded);
}

TEST_CASE("Lusztig counts against the whole-group oracle") {
  struct Case {
    GroupSpec spec;
    const char* h;
  };
  for (const auto& c : std::vector<Case>{{GroupSpec(GroupFamily::GL, 2, 3), "0 1; 1 1"},
                                         {GroupSpec(GroupFamily::GL, 2, 5), "1 1; 0 1"},
                                         {GroupSpec(GroupFamily::GL, 3, 2), "0 0 1; 1 0 1; 0 1 0"},
                                         {GroupSpec(GroupFamily::SL, 2, 5), "1 1; 0 1"},
                                         {GroupSpec(GroupFamily::SL, 3, 2, TwistKind::flip), "1 1 0; 0 1 1; 0 0 1"},
                                         {GroupSpec(GroupFamily::GL, 2, 3, TwistKind::flip), "1 0; 0 2"}}) {
    auto h = MatrixFq::parse(c.h, c.spec.p());
    auto serial = lusztig_counts(c.spec, h, chevalley::kDefaultFlagCap, Exec::serial);
    CHECK(serial == brute_lusztig(c.spec, h));
    CHECK(serial == lusztig_counts(c.spec, h, chevalley::kDefaultFlagCap, Exec::parallel));
    std::uint64_t total = 0;
    for (auto x : serial) total += x;
    CHECK(total == c.spec.num_flags());

    auto o = chevalley::orbit(h, c.spec);
    auto cells = class_cell_counts(o, Exec::serial);
    CHECK(cells == class_cell_counts(o, Exec::parallel));
    std::uint64_t orbit_total = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      orbit_total += cells[i];
      CHECK(kawanaka_check(c.spec, o, serial[i], cells[i]).holds());
    }
    CHECK(orbit_total == o.size());
  }
}

TEST_CASE("unipotent cells match the twisted Hecke coefficients") {
  for (auto spec : {GroupSpec(GroupFamily::GL, 2, 5), GroupSpec(GroupFamily::GL, 3, 3),
                    GroupSpec(GroupFamily::SL, 3, 3, TwistKind::flip), GroupSpec(GroupFamily::GL, 4, 2)}) {
    const auto delta = spec.weyl_automorphism();
    const auto group = coxeter::WeylGroup::get(spec.weyl_datum());
    for (const auto& wp : group->elements()) {
      auto counts = unipotent_cell_counts(spec, wp);
      for (std::size_t i = 0; i < group->size(); ++i) {
        auto c = hecke::kawanaka_coefficient((*group)[i], wp, delta);
        BigInt expected = specialize(c, spec.p());
        for (int k = 0; k < wp.length(); ++k) expected *= spec.p();
        CHECK(BigInt(counts[i]) == expected);
      }
    }
  }
}

TEST_CASE("geometric class counts agree with the orbit route") {
  // SL2 regular unipotent: two rational orbits at odd p.
  for (std::uint32_t p : {3u, 5u, 7u}) {
    GroupSpec sl2(GroupFamily::SL, 2, p);
    auto h = ElementTemplate::parse("jordan:2:1").instantiate(p);
    auto geo = geometric_cell_counts(sl2, h);
    auto orbits = chevalley::fused_orbits_by_search(h, sl2);
    CHECK(orbits.size() == 2);
    std::vector<BigInt> summed(geo.size(), BigInt(0));
    for (const auto& o : orbits) {
      auto cells = class_cell_counts(o);
      for (std::size_t i = 0; i < cells.size(); ++i) summed[i] += cells[i];
    }
    CHECK(summed == geo);
  }
  GroupSpec gl3(GroupFamily::GL, 3, 5);
  auto h = ElementTemplate::parse("companion:1,-4,5,-2").instantiate(5);
  auto geo = geometric_cell_counts(gl3, h);
  auto cells = class_cell_counts(chevalley::orbit(h, gl3));
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(geo[i] == cells[i]);
}

TEST_CASE("fit examples") {
  PointCountSeries line{"s", "q", {{2, 1}, {3, 2}, {5, 4}}};
  auto fit = fit_polynomial(line, 1);
  CHECK(fit.polynomial == RationalPolynomial(IntPolynomial{-1, 1}));
  CHECK(fit.is_monic);
  CHECK(fit.degree == 1);
  CHECK(fit.points_checked == 1);

  PointCountSeries constant{"s", "q", {{2, 7}, {3, 7}, {5, 7}}};
  CHECK(fit_polynomial(constant, 0).degree == 0);
  CHECK(fit_polynomial(constant).degree == 0);

  PointCountSeries zero{"s", "q", {{2, 0}, {3, 0}, {5, 0}}};
  CHECK(fit_polynomial(zero).degree == -1);

  PointCountSeries bent{"s", "q", {{2, 1}, {3, 2}, {5, 5}}};
  CHECK_THROWS_AS(fit_polynomial(bent, 1), FitError);
  CHECK_THROWS_AS(fit_polynomial(line, 2), FitError);

  PointCountSeries half{"s", "q", {{2, 1}, {3, 3}, {5, 10}, {7, 21}}};  // p(p-1)/2
  auto h = fit_polynomial(half, 2);
  CHECK_FALSE(h.is_integer_coefficients);
  CHECK(h.leading_coefficient == Rational(1, 2));

  // |U^- ∩ Bw0B| in GL3 equals kawanaka_coefficient(w0, 1) as a polynomial.
  PointCountSeries series{"gl3", "unipotent", {}};
  const auto d = coxeter::CoxeterDatum::parse("A2");
  const auto w0 = coxeter::longest_element(d);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
    GroupSpec spec(GroupFamily::GL, 3, p);
    series.counts[p] = count_unipotent_cell(spec, w0, WeylElement::identity(d));
  }
  auto target = hecke::kawanaka_coefficient(w0, WeylElement::identity(d), coxeter::DiagramAutomorphism::identity(d));
  CHECK(fit_polynomial(series, 3).polynomial == RationalPolynomial(target));
}
