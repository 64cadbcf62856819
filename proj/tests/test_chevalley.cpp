#include <set>

#include "doctest.h"
#include "lvc/chevalley.hpp"
#include "lvc/error.hpp"

using namespace lvc;
using namespace lvc::chevalley;

namespace {

// Oracle: every matrix of the group, by brute force over all entries.
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

// Oracle: the orbit and stabilizer by applying every group element.
std::pair<std::set<MatrixKey>, std::uint64_t> brute_orbit(const MatrixFq& h, const GroupSpec& spec) {
  std::set<MatrixKey> orbit;
  std::uint64_t stabilizer = 0;
  for (const auto& g : all_elements(spec)) {
    auto x = twisted_conjugate(g, h, spec);
    orbit.insert(x.key());
    stabilizer += x == h;
  }
  return {orbit, stabilizer};
}

// Oracle: degree of each distinct irreducible factor, by trial division against every
// monic polynomial. Coefficients low degree first.
using Poly = std::vector<long long>;

Poly remainder(Poly a, const Poly& b, long long p) {
  long long inv = 1;
  while (inv * b.back() % p != 1) ++inv;
  while (a.size() >= b.size()) {
    const long long c = a.back() * inv % p;
    const auto shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

std::vector<Poly> monic_of_degree(int d, long long p) {
  std::vector<Poly> out;
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  for (long long code = 0; code < total; ++code) {
    Poly q(d + 1, 1);
    auto c = code;
    for (int i = 0; i < d; ++i) {
      q[i] = c % p;
      c /= p;
    }
    out.push_back(q);
  }
  return out;
}

bool irreducible(const Poly& q, long long p) {
  const int d = static_cast<int>(q.size()) - 1;
  for (int e = 1; 2 * e <= d; ++e)
    for (const auto& r : monic_of_degree(e, p))
      if (remainder(q, r, p).empty()) return false;
  return true;
}

std::vector<int> brute_factor_degrees(const Poly& f, long long p) {
  std::vector<int> degrees;
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n; ++d)
    for (const auto& q : monic_of_degree(d, p))
      if (irreducible(q, p) && remainder(f, q, p).empty()) degrees.push_back(d);
  return degrees;
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(group_order(GroupSpec(GroupFamily::GL, 2, 3)) == 48);
  CHECK(group_order(GroupSpec(GroupFamily::SL, 2, 3)) == 24);
  CHECK(group_order(GroupSpec(GroupFamily::GL, 3, 2)) == 168);
  for (auto spec : {GroupSpec(GroupFamily::GL, 2, 3), GroupSpec(GroupFamily::SL, 2, 5), GroupSpec(GroupFamily::SL, 3, 2)})
    CHECK(BigInt(all_elements(spec).size()) == group_order(spec));
  GroupSpec gl3(GroupFamily::GL, 3, 7);
  CHECK(gl3.borel_order() == BigInt(6 * 6 * 6 * 343));
  CHECK(BigInt(gl3.num_flags()) == gl3.order() / gl3.borel_order());
  CHECK_THROWS(GroupSpec(GroupFamily::GL, 2, 4));
  CHECK_THROWS(GroupSpec(GroupFamily::GL, 6, 2));
}

TEST_CASE("fixed torus dimensions") {
  CHECK(GroupSpec(GroupFamily::GL, 3, 5).dim_fixed_torus() == 3);
  CHECK(GroupSpec(GroupFamily::SL, 3, 5).dim_fixed_torus() == 2);
  CHECK(GroupSpec(GroupFamily::SL, 3, 5, TwistKind::flip).dim_fixed_torus() == 1);
  CHECK(GroupSpec(GroupFamily::GL, 3, 5, TwistKind::flip).dim_fixed_torus() == 1);
  CHECK(GroupSpec(GroupFamily::SL, 4, 5, TwistKind::flip).dim_fixed_torus() == 2);
  CHECK(GroupSpec(GroupFamily::GL, 4, 5, TwistKind::flip).dim_fixed_torus() == 2);
  CHECK(GroupSpec(GroupFamily::GL, 4, 5, TwistKind::flip).center_caveat());
  CHECK_FALSE(GroupSpec(GroupFamily::SL, 4, 5, TwistKind::flip).center_caveat());
}

TEST_CASE("twisted conjugation") {
  GroupSpec spec(GroupFamily::GL, 3, 5);
  auto h = MatrixFq::parse("1 1 0; 0 2 1; 1 0 3", 5);
  auto g = MatrixFq::parse("1 2 0; 0 1 4; 2 0 1", 5);
  CHECK(twisted_conjugate(MatrixFq::identity(3, 5), h, spec) == h);
  CHECK(characteristic_polynomial(twisted_conjugate(g, h, spec)) == characteristic_polynomial(h));
  CHECK_THROWS(twisted_conjugate(MatrixFq::parse("1 1 0; 1 1 0; 0 0 1", 5), h, spec));
  CHECK_THROWS(twisted_conjugate(g, h, GroupSpec(GroupFamily::SL, 3, 5)));
}

TEST_CASE("orbit examples against exhaustive conjugation") {
  GroupSpec gl2(GroupFamily::GL, 2, 3);
  auto o = orbit(MatrixFq::parse("1 0; 0 2", 3), gl2);
  CHECK(o.size() == 12);
  CHECK(o.centralizer_order() == 4);
  CHECK(orbit(MatrixFq::parse("2 0; 0 2", 3), gl2).size() == 1);

  GroupSpec sl2(GroupFamily::SL, 2, 3);
  auto u = orbit(MatrixFq::parse("1 1; 0 1", 3), sl2);
  CHECK(u.centralizer_order() == 6);

  struct Case {
    GroupSpec spec;
    const char* h;
  };
  std::vector<Case> cases{
      {gl2, "1 0; 0 2"},
      {gl2, "0 2; 1 1"},
      {sl2, "1 1; 0 1"},
      {GroupSpec(GroupFamily::SL, 2, 5), "1 1; 0 1"},
      {GroupSpec(GroupFamily::SL, 3, 2), "1 1 0; 0 1 1; 0 0 1"},
      {GroupSpec(GroupFamily::SL, 3, 2, TwistKind::flip), "1 1 0; 0 1 1; 0 0 1"},
      {GroupSpec(GroupFamily::SL, 3, 2, TwistKind::flip), "1 0 0; 0 1 0; 0 0 1"},
      {GroupSpec(GroupFamily::GL, 2, 3, TwistKind::flip), "1 0; 0 2"},
  };
  for (const auto& c : cases) {
    auto h = MatrixFq::parse(c.h, c.spec.p());
    auto [expected, stabilizer] = brute_orbit(h, c.spec);
    for (auto exec : {kernels::Exec::serial, kernels::Exec::parallel}) {
      auto computed = orbit(h, c.spec, kDefaultOrbitCap, exec);
      CHECK(std::set<MatrixKey>(computed.keys().begin(), computed.keys().end()) == expected);
      CHECK(computed.centralizer_order() == stabilizer);
      CHECK(computed.contains(h));
    }
  }
  CHECK_THROWS_AS(orbit(MatrixFq::parse("1 0; 0 2", 3), gl2, 5), CapExceeded);
}

TEST_CASE("linear centralizer route matches orbit-stabilizer") {
  struct Case {
    GroupFamily family;
    int n;
    std::uint32_t p;
    const char* h;
  };
  for (const auto& c : std::vector<Case>{{GroupFamily::GL, 2, 3, "1 0; 0 2"},
                                         {GroupFamily::GL, 3, 5, "0 0 1; 1 0 1; 0 1 0"},
                                         {GroupFamily::GL, 3, 3, "1 1 0; 0 1 0; 0 0 1"},
                                         {GroupFamily::SL, 2, 5, "1 1; 0 1"},
                                         {GroupFamily::SL, 3, 3, "1 1 0; 0 1 1; 0 0 1"},
                                         {GroupFamily::GL, 4, 3, "1 1 0 0; 0 1 1 0; 0 0 1 1; 0 0 0 1"}}) {
    GroupSpec spec(c.family, c.n, c.p);
    auto h = MatrixFq::parse(c.h, c.p);
    auto o = orbit(h, spec);
    CHECK(BigInt(o.size()) * centralizer_order(h, spec) == group_order(spec));
  }
}

TEST_CASE("twisted linear centralizer route matches orbit-stabilizer") {
  struct Case {
    GroupFamily family;
    int n;
    std::uint32_t p;
    const char* h;
  };
  for (const auto& c : std::vector<Case>{{GroupFamily::SL, 3, 2, "1 1 0; 0 1 1; 0 0 1"},
                                         {GroupFamily::SL, 3, 3, "1 1 0; 0 1 1; 0 0 1"},
                                         {GroupFamily::SL, 3, 5, "1 1 0; 0 1 1; 0 0 1"},
                                         {GroupFamily::SL, 3, 3, "1 0 0; 0 1 0; 0 0 1"},
                                         {GroupFamily::SL, 3, 3, "1 1 0; 0 1 0; 0 0 1"},
                                         {GroupFamily::SL, 2, 5, "1 1; 0 1"},
                                         {GroupFamily::GL, 2, 3, "1 0; 0 2"},
                                         {GroupFamily::GL, 3, 3, "0 0 1; 1 0 1; 0 1 0"}}) {
    GroupSpec spec(c.family, c.n, c.p, TwistKind::flip);
    auto h = MatrixFq::parse(c.h, c.p);
    auto o = orbit(h, spec);
    CHECK(centralizer_order(h, spec) == o.centralizer_order());
  }
  // Regular unipotent in SL3 with the flip: |Z| = p at odd p.
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    GroupSpec spec(GroupFamily::SL, 3, p, TwistKind::flip);
    CHECK(centralizer_order(MatrixFq::parse("1 1 0; 0 1 1; 0 0 1", p), spec) == p);
  }
}

TEST_CASE("characteristic and minimal polynomials") {
  auto h = MatrixFq::parse("0 1; 1 1", 3);  // companion of x^2 - x - 1
  CHECK(characteristic_polynomial(h) == FpPoly{2, 2, 1});
  CHECK(minimal_polynomial(h) == FpPoly{2, 2, 1});
  CHECK(minimal_polynomial(MatrixFq::identity(3, 5)) == FpPoly{4, 1});
  CHECK(characteristic_polynomial(MatrixFq::identity(3, 5)) == FpPoly{4, 3, 2, 1});
}

TEST_CASE("regularity certificates") {
  GroupSpec gl2(GroupFamily::GL, 2, 3);
  auto nonsplit = ElementTemplate::parse("companion:1,-1,-1").instantiate(3);
  // Oracle: x^2 - x - 1 has no root mod 3.
  for (long long a = 0; a < 3; ++a) CHECK((a * a - a - 1) % 3 != 0);
  CHECK(is_regular(nonsplit, gl2).kind == RegularKind::nonsplit);
  CHECK(is_regular(MatrixFq::identity(2, 3), gl2).kind == RegularKind::not_regular);
  CHECK(is_regular(ElementTemplate::parse("jordan:2:1").instantiate(3), gl2).kind == RegularKind::unipotent);
  CHECK(is_regular(ElementTemplate::parse("jordan:2:2").instantiate(3), gl2).kind == RegularKind::mixed);
  CHECK(is_regular(ElementTemplate::parse("diag:1,2").instantiate(3), gl2).kind == RegularKind::split);
  CHECK(is_regular(ElementTemplate::parse("diag:1,1").instantiate(3), gl2).kind == RegularKind::not_regular);
  GroupSpec gl3(GroupFamily::GL, 3, 7);
  CHECK(is_regular(ElementTemplate::parse("companion:1,-4,5,-2").instantiate(7), gl3).kind == RegularKind::mixed);
  CHECK(is_regular(ElementTemplate::parse("companion:1,-1,1,-1").instantiate(7), gl3).kind == RegularKind::nonsplit);
  CHECK(is_regular(ElementTemplate::parse("jordan:3:1").instantiate(2), GroupSpec(GroupFamily::GL, 3, 2)).kind ==
        RegularKind::unipotent);
  CHECK_THROWS(is_regular(MatrixFq::identity(3, 5), GroupSpec(GroupFamily::SL, 3, 5, TwistKind::flip)));

  // For GL_n: not-regular iff minimal polynomial != characteristic polynomial,
  // checked over every element of GL2(F3).
  for (const auto& g : all_elements(gl2))
    CHECK(is_regular(g, gl2).regular() == (minimal_polynomial(g) == characteristic_polynomial(g)));
}

TEST_CASE("irreducible factor degrees match trial division") {
  const std::vector<std::vector<long long>> leading_first{
      {1, 0, 1}, {1, -1, -1}, {1, 0, -1, -1}, {1, -1, 1, -1}, {1, -4, 5, -2}, {1, 0, 0, 1, 1}, {1, 1, 1, 1, 1}, {1, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 1}, {1, 0, 2, 0, 1}};
  for (long long p : {2, 3, 5, 7}) {
    for (const auto& coeffs : leading_first) {
      std::string text = "companion:";
      for (std::size_t i = 0; i < coeffs.size(); ++i) text += (i ? "," : "") + std::to_string(coeffs[i]);
      const auto h = ElementTemplate::parse(text).instantiate(static_cast<std::uint32_t>(p));
      const int n = static_cast<int>(coeffs.size()) - 1;
      if (!h.is_invertible()) continue;
      Poly f(coeffs.rbegin(), coeffs.rend());
      for (auto& c : f) c = ((c % p) + p) % p;
      CAPTURE(text);
      CAPTURE(p);
      const GroupSpec gl(GroupFamily::GL, n, static_cast<std::uint32_t>(p));
      const auto cert = is_regular(h, gl);
      CHECK(cert.factor_degrees == brute_factor_degrees(f, p));
    }
  }
  CHECK(is_regular(ElementTemplate::parse("jordan:3:1").instantiate(5), GroupSpec(GroupFamily::GL, 3, 5)).factor_degrees ==
        std::vector<int>{1});
  CHECK(degrees_to_string({1, 2}) == "1,2");
}

TEST_CASE("empirical twisted regularity") {
  // p - 1 and p(p^2 - 1) centralizer shapes.
  std::map<std::uint32_t, BigInt> torus{{3, 2}, {5, 4}, {7, 6}, {11, 10}};
  CHECK(is_regular_twisted(torus, 1).kind == RegularKind::twisted);
  std::map<std::uint32_t, BigInt> big{{3, 24}, {5, 120}, {7, 336}, {11, 1320}, {13, 2184}};
  CHECK(is_regular_twisted(big, 1).kind == RegularKind::not_regular);
  CHECK_THROWS(is_regular_twisted({{3, 2}, {5, 4}}, 1));
}

TEST_CASE("Steinberg representatives") {
  GroupSpec gl2(GroupFamily::GL, 2, 3);
  auto d = MatrixFq::parse("1 0; 0 2", 3);
  CHECK(steinberg_representative(orbit(d, gl2)).element == d);

  auto u = MatrixFq::parse("1 1; 0 1", 3);
  auto uo = orbit(u, gl2);
  CHECK(uo.size() == 8);
  auto w = steinberg_representative(uo);
  CHECK(w.orbit_index == 0);
  CHECK(w.element.is_lower_triangular());
  CHECK(uo.contains(w.element));

  for (const char* poly : {"companion:1,-1,-1", "companion:1,0,1"}) {
    auto c = ElementTemplate::parse(poly).instantiate(3);
    auto co = orbit(c, gl2);
    // Nonsplit classes have no rational lower triangular element.
    CHECK_THROWS_AS(steinberg_representative(co), NotFound);
  }
  auto c = ElementTemplate::parse("companion:1,-1,1,-1").instantiate(3);
  auto co = orbit(c, GroupSpec(GroupFamily::GL, 3, 3));
  CHECK_THROWS_AS(steinberg_representative(co), NotFound);
  auto split = orbit(ElementTemplate::parse("companion:1,-6,11,-6").instantiate(5), GroupSpec(GroupFamily::GL, 3, 5));
  CHECK(steinberg_representative(split).element.is_lower_triangular());

  // SL2 unipotent: each of the two rational orbits has a lower triangular element.
  GroupSpec sl2(GroupFamily::SL, 2, 5);
  auto orbits = fused_orbits_by_search(MatrixFq::parse("1 1; 0 1", 5), sl2);
  REQUIRE(orbits.size() == 2);
  CHECK(steinberg_representative(orbits[0]).orbit_index == 0);
  CHECK(steinberg_representative(orbits[1], std::span(orbits).first(1)).orbit_index == 0);
}

TEST_CASE("flag representatives") {
  CHECK(enumerate_flag_reps(GroupSpec(GroupFamily::GL, 2, 3)).size() == 4);
  CHECK(enumerate_flag_reps(GroupSpec(GroupFamily::GL, 3, 2)).size() == 21);
  CHECK_THROWS_AS(enumerate_flag_reps(GroupSpec(GroupFamily::GL, 3, 7), 100), CapExceeded);
  for (auto spec : {GroupSpec(GroupFamily::GL, 2, 3), GroupSpec(GroupFamily::GL, 3, 2), GroupSpec(GroupFamily::GL, 3, 3),
                    GroupSpec(GroupFamily::SL, 3, 3), GroupSpec(GroupFamily::SL, 2, 5)}) {
    auto flags = enumerate_flag_reps(spec);
    CHECK(flags.size() == spec.num_flags());
    CHECK(BigInt(flags.size()) * spec.borel_order() == spec.order());
    std::vector<MatrixFq> reps;
    for (std::uint64_t i = 0; i < flags.size(); ++i) {
      auto g = flags.at(i);
      CHECK(spec.contains(g));
      const auto cell = coxeter::WeylGroup::get(spec.weyl_datum())->elements()[flags.cell_of(i)];
      CHECK(matfq::bruhat_word(g).w == cell);
      reps.push_back(g);
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        CHECK_FALSE((reps[i].inverse() * reps[j]).is_upper_triangular());
  }
}

TEST_CASE("geometric class fusion") {
  auto u = ElementTemplate::parse("jordan:2:1");
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    GroupSpec sl2(GroupFamily::SL, 2, p);
    auto h = u.instantiate(p);
    auto geo = geometric_class(h, sl2);
    CHECK(geo.k() == (p == 2 ? 1u : 2u));
    auto searched = fused_orbits_by_search(h, sl2);
    REQUIRE(searched.size() == geo.k());
    // Each representative lies in exactly one searched orbit, with matching centralizer.
    std::set<std::size_t> hit;
    for (std::size_t i = 0; i < geo.k(); ++i)
      for (std::size_t j = 0; j < searched.size(); ++j)
        if (searched[j].contains(geo.representatives[i])) {
          hit.insert(j);
          CHECK(searched[j].centralizer_order() == geo.centralizer_orders[i]);
        }
    CHECK(hit.size() == geo.k());
  }
  // Split regular semisimple classes in SL stay single orbits.
  GroupSpec sl3(GroupFamily::SL, 3, 5);
  auto h = ElementTemplate::parse("diag:1,2,3").instantiate(5);
  CHECK(geometric_class(h, sl3).k() == 1);
  CHECK(geometric_class(h, GroupSpec(GroupFamily::GL, 3, 5)).k() == 1);
  CHECK_THROWS(geometric_class(MatrixFq::identity(3, 5), GroupSpec(GroupFamily::SL, 3, 5, TwistKind::flip)));
}

TEST_CASE("element templates") {
  CHECK(ElementTemplate::parse("diag:1,2,3").dimension() == 3);
  CHECK(ElementTemplate::parse("diag:1,2").instantiate(5) == MatrixFq::parse("1 0; 0 2", 5));
  CHECK(ElementTemplate::parse("jordan:3:2").instantiate(5) == MatrixFq::parse("2 1 0; 0 2 1; 0 0 2", 5));
  CHECK(ElementTemplate::parse("companion:1,-1,-1").instantiate(5) == MatrixFq::parse("0 1; 1 1", 5));
  CHECK(ElementTemplate::parse("literal:1 2; 3 4").instantiate(7) == MatrixFq::parse("1 2; 3 4", 7));
  CHECK(ElementTemplate::parse("literal:1 2; 3 4").dimension() == 2);
  CHECK_THROWS_AS(ElementTemplate::parse("companion:2,1"), ParseError);
  CHECK_THROWS_AS(ElementTemplate::parse("sym:1"), ParseError);
  CHECK_THROWS_AS(ElementTemplate::parse("diag:1,x"), ParseError);
  for (const char* t : {"companion:1,-1,-1", "companion:1,-4,5,-2", "companion:1,0,0,0,1"}) {
    auto tpl = ElementTemplate::parse(t);
    auto h = tpl.instantiate(7);
    CHECK(minimal_polynomial(h) == characteristic_polynomial(h));
  }
}
