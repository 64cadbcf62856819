#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "lvc/error.hpp"
#include "lvc/harness.hpp"
#include "workspace.hpp"

namespace lvc::harness {

namespace {

using namespace detail;

ReportRow make_row(const Scenario& s, std::string_view suite, std::string check) {
  return {s.id, std::move(check), std::string(suite), Status::info, {}, {}};
}

ReportRow cap_row(const Scenario& s, std::string_view suite, std::string check, const CapExceeded& e,
                  std::map<std::string, std::string> witness) {
  auto row = make_row(s, suite, std::move(check));
  row.status = Status::skipped;
  row.witness = std::move(witness);
  row.witness["cap"] = std::to_string(e.cap());
  row.witness["needed"] = std::to_string(e.needed());
  row.detail = std::string("cap exceeded: ") + e.what();
  return row;
}

bool is_cap_row(const ReportRow& row) { return row.status == Status::skipped && row.witness.contains("cap"); }

/// Fits `series` with `bound` into `row`. Returns nothing when the fit is
/// impossible; the row is then already final (skipped or failed).
std::optional<FittedPolynomial> fit_into(ReportRow& row, const PointCountSeries& series, int bound, bool asserted) {
  row.witness["counts"] = series_text(series);
  row.witness["degree_bound"] = std::to_string(bound);
  if (series.counts.size() < static_cast<std::size_t>(bound) + 2) {
    row.status = Status::skipped;
    row.detail = "insufficient points: " + std::to_string(series.counts.size()) + " valid primes, need " +
                 std::to_string(bound + 2);
    return std::nullopt;
  }
  try {
    auto fit = counting::fit_polynomial(series, bound);
    row.witness["polynomial"] = fit.polynomial.to_string();
    row.witness["degree"] = std::to_string(fit.degree);
    row.witness["leading_coefficient"] = fit.leading_coefficient.str();
    row.witness["points_checked"] = std::to_string(fit.points_checked);
    return fit;
  } catch (const FitError& e) {
    row.status = asserted ? Status::fail : Status::info;
    row.detail = e.what();
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- suites

std::vector<ReportRow> hecke_props(Workspace& ws) {
  constexpr std::string_view suite = "hecke-props";
  const auto& s = ws.scenario();
  const auto d = s.datum();
  const auto delta = s.automorphism();
  const auto group = coxeter::WeylGroup::get(d);
  const auto& elements = group->elements();
  std::vector<ReportRow> rows;

  {
    auto row = make_row(s, suite, "associativity");
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
    std::uint64_t failures = 0;
    for (std::uint32_t k = 0; k < s.samples; ++k) {
      const auto a = hecke::HeckeElement::basis(elements[pick(rng)]);
      const auto b = hecke::HeckeElement::basis(elements[pick(rng)]);
      const auto c = hecke::HeckeElement::basis(elements[pick(rng)]);
      if (hecke::multiply(hecke::multiply(a, b), c) != hecke::multiply(a, hecke::multiply(b, c))) {
        if (failures++ == 0)
          row.detail = "first failing triple: " + word_of(a.terms()[0].first) + " | " + word_of(b.terms()[0].first) +
                       " | " + word_of(c.terms()[0].first);
      }
    }
    row.witness = {{"type", d.to_string()}, {"seed", std::to_string(s.seed)}, {"samples", std::to_string(s.samples)},
                   {"failures", std::to_string(failures)}};
    row.status = failures == 0 ? Status::pass : Status::fail;
    rows.push_back(std::move(row));
  }

  {
    auto row = make_row(s, suite, "specialize-at-one");
    std::uint64_t failures = 0;
    for (const auto& x : elements)
      for (const auto& y : elements) {
        const auto product = hecke::multiply(hecke::HeckeElement::basis(x), hecke::HeckeElement::basis(y));
        const auto xy = coxeter::multiply(x, y);
        bool ok = true;
        for (const auto& [w, c] : product.terms()) {
          const BigInt at_one = c.evaluate(1);
          if (at_one != (w == xy ? 1 : 0)) ok = false;
        }
        if (product.coefficient(xy).evaluate(1) != 1) ok = false;
        if (!ok && failures++ == 0) row.detail = "first failing pair: " + word_of(x) + " | " + word_of(y);
      }
    row.witness = {{"type", d.to_string()},
                   {"pairs", std::to_string(elements.size() * elements.size())},
                   {"failures", std::to_string(failures)}};
    row.status = failures == 0 ? Status::pass : Status::fail;
    rows.push_back(std::move(row));
  }

  for (const auto& w : s.selected()) {
    const auto sum = hecke::dm_sum(w, delta, ws.options().cache);
    const bool full = coxeter::has_full_twisted_support(w, delta);
    auto row = make_row(s, suite, full ? "dm-sum-monic" : "dm-sum-observed");
    row.witness = {{"type", d.to_string()},
                   {"delta", delta.label()},
                   {"w", word_of(w)},
                   {"length", std::to_string(w.length())},
                   {"polynomial", sum.to_string()},
                   {"degree", std::to_string(sum.degree())},
                   {"monic", sum.is_monic() ? "true" : "false"}};
    if (full) {
      row.status = sum.is_monic() && sum.degree() == w.length() ? Status::pass : Status::fail;
    } else {
      row.detail = "twisted support is proper; recorded only";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> kawanaka34(Workspace& ws) {
  constexpr std::string_view suite = "kawanaka34";
  const auto& s = ws.scenario();
  const auto d = s.datum();
  const auto delta = s.automorphism();
  const auto group = coxeter::WeylGroup::get(d);
  const int top = longest_length(d);
  std::vector<ReportRow> rows;
  for (auto p : ws.raw_primes()) {
    for (const auto& wp : group->elements()) {
      const CellTally* counts = nullptr;
      try {
        counts = &ws.unipotent(p, wp);
      } catch (const CapExceeded& e) {
        rows.push_back(cap_row(s, suite, "hecke-count-bridge", e, {{"prime", std::to_string(p)}, {"w_prime", word_of(wp)}}));
        continue;
      }
      std::uint64_t total = 0;
      for (auto c : *counts) total += c;
      const bool partition = BigInt(total) == power(p, top);
      for (const auto& w : s.selected()) {
        const auto coefficient = hecke::kawanaka_coefficient(w, wp, delta, ws.options().cache);
        const BigInt at_p = specialize(coefficient, p);
        const BigInt scale = power(p, wp.length());
        const BigInt count = (*counts)[group->index_of(w)];
        auto row = make_row(s, suite, "hecke-count-bridge");
        row.witness = {{"prime", std::to_string(p)},       {"w", word_of(w)},
                       {"w_prime", word_of(wp)},           {"count", count.str()},
                       {"coefficient", coefficient.to_string()}, {"coefficient_at_p", at_p.str()},
                       {"p_power", scale.str()},           {"sweep_total", std::to_string(total)}};
        row.status = count == at_p * scale && partition ? Status::pass : Status::fail;
        if (!partition) row.detail = "cell counts do not sum to p^" + std::to_string(top);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<ReportRow> lemma33(Workspace& ws) {
  constexpr std::string_view suite = "lemma33";
  const auto& s = ws.scenario();
  const auto d = s.datum();
  const auto delta = s.automorphism();
  const auto group = coxeter::WeylGroup::get(d);
  std::vector<ReportRow> rows;

  auto series_for = [&](const WeylElement& w, const WeylElement& wp, ReportRow& row) -> std::optional<PointCountSeries> {
    PointCountSeries series{s.id, "unipotent-cell", {}};
    for (auto p : ws.raw_primes()) {
      try {
        series.counts[p] = ws.unipotent(p, wp)[group->index_of(w)];
      } catch (const CapExceeded& e) {
        row = cap_row(s, suite, row.check, e, {{"prime", std::to_string(p)}, {"w", word_of(w)}, {"w_prime", word_of(wp)}});
        return std::nullopt;
      }
    }
    return series;
  };

  const auto identity = WeylElement::identity(d);
  for (const auto& w : s.selected()) {
    if (!coxeter::has_full_twisted_support(w, delta)) continue;
    {
      auto row = make_row(s, suite, "unipotent-cell-monic");
      if (auto series = series_for(w, identity, row)) {
        row.witness["w"] = word_of(w);
        row.witness["expected_degree"] = std::to_string(w.length());
        if (auto fit = fit_into(row, *series, w.length(), true)) {
          row.status = fit->degree == w.length() && fit->is_monic ? Status::pass : Status::fail;
        }
      }
      rows.push_back(std::move(row));
    }
    for (const auto& wp : group->elements()) {
      if (wp.length() == 0) continue;
      auto row = make_row(s, suite, "unipotent-cell-degree-drop");
      if (auto series = series_for(w, wp, row)) {
        const int bound = w.length() + wp.length();
        row.witness["w"] = word_of(w);
        row.witness["w_prime"] = word_of(wp);
        row.witness["strict_bound"] = std::to_string(bound);
        if (auto fit = fit_into(row, *series, bound, true)) row.status = fit->degree < bound ? Status::pass : Status::fail;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ReportRow> lemma41(Workspace& ws) {
  constexpr std::string_view suite = "lemma41";
  const auto& s = ws.scenario();
  const auto group = coxeter::WeylGroup::get(s.datum());
  std::vector<ReportRow> rows;
  for (auto p : ws.valid_orbit_primes()) {
    const auto spec = s.spec(p);
    const chevalley::TwistedClassOrbit* orbit = nullptr;
    const CellTally* lusztig = nullptr;
    CellTally cells;
    try {
      orbit = &ws.orbit(p);
      lusztig = &ws.lusztig(p, 0);
      cells = counting::class_cell_counts(*orbit, ws.options().exec);
    } catch (const CapExceeded& e) {
      rows.push_back(cap_row(s, suite, "class-cell-identity", e, {{"prime", std::to_string(p)}}));
      continue;
    }

    {
      auto row = make_row(s, suite, "orbit-stabilizer");
      const BigInt linear = ws.centralizer(p);
      row.witness = {{"prime", std::to_string(p)},
                     {"orbit_size", std::to_string(orbit->size())},
                     {"centralizer_order", linear.str()},
                     {"group_order", spec.order().str()}};
      row.status = BigInt(orbit->size()) * linear == spec.order() ? Status::pass : Status::fail;
      rows.push_back(std::move(row));
    }
    {
      std::uint64_t y_total = 0, c_total = 0;
      for (auto c : *lusztig) y_total += c;
      for (auto c : cells) c_total += c;
      auto row = make_row(s, suite, "cell-partition");
      row.witness = {{"prime", std::to_string(p)},
                     {"flag_total", std::to_string(y_total)},
                     {"flags", std::to_string(spec.num_flags())},
                     {"class_cell_total", std::to_string(c_total)},
                     {"orbit_size", std::to_string(orbit->size())}};
      row.status = y_total == spec.num_flags() && c_total == orbit->size() ? Status::pass : Status::fail;
      rows.push_back(std::move(row));
    }
    for (const auto& w : s.selected()) {
      const auto i = group->index_of(w);
      const auto check = counting::kawanaka_check(spec, *orbit, (*lusztig)[i], cells[i]);
      auto row = make_row(s, suite, "class-cell-identity");
      row.witness = {{"prime", std::to_string(p)},
                     {"w", word_of(w)},
                     {"lusztig", check.lusztig.str()},
                     {"borel", check.borel.str()},
                     {"orbit_size", check.orbit_size.str()},
                     {"group", check.group.str()},
                     {"class_cell", check.class_cell.str()}};
      row.status = check.holds() ? Status::pass : Status::fail;
      if (!check.holds()) row.detail = "lhs " + check.lhs().str() + " != rhs " + check.rhs().str();
      rows.push_back(std::move(row));
    }
    {
      auto row = make_row(s, suite, "steinberg-representative");
      row.witness["prime"] = std::to_string(p);
      try {
        std::vector<chevalley::TwistedClassOrbit> siblings;
        if (spec.twist() == TwistKind::trivial) {
          const auto& geo = ws.orbits(p);
          for (std::size_t k = 1; k < geo.k(); ++k)
            siblings.push_back(chevalley::orbit(geo.representatives[k], spec, s.caps.orbit, ws.options().exec));
        }
        const auto witness = chevalley::steinberg_representative(*orbit, siblings);
        row.witness["element"] = witness.element.to_string();
        row.witness["orbit_index"] = std::to_string(witness.orbit_index);
        row.status = witness.orbit_index == 0 ? Status::pass : Status::info;
        if (witness.orbit_index != 0) row.detail = "found in sibling orbit " + std::to_string(witness.orbit_index);
      } catch (const NotFound& e) {
        row.status = Status::info;
        row.detail = e.what();
      } catch (const CapExceeded& e) {
        row = cap_row(s, suite, "steinberg-representative", e, {{"prime", std::to_string(p)}});
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Per-orbit |Y_{w,h_i}| series over the valid primes; orbit i only exists
/// at primes where the geometric class has more than i rational orbits.
std::vector<PointCountSeries> orbit_series(Workspace& ws, const WeylElement& w, std::vector<ReportRow>& caps,
                                           std::string_view suite) {
  const auto& s = ws.scenario();
  const auto group = coxeter::WeylGroup::get(s.datum());
  std::vector<PointCountSeries> out;
  for (auto p : ws.valid_primes()) {
    try {
      const auto k = ws.orbits(p).k();
      for (std::size_t i = 0; i < k; ++i) {
        if (out.size() <= i) out.push_back({s.id, "lusztig-orbit-" + std::to_string(i), {}});
        out[i].counts[p] = ws.lusztig(p, i)[group->index_of(w)];
      }
    } catch (const CapExceeded& e) {
      caps.push_back(cap_row(s, suite, "orbit-variety", e, {{"prime", std::to_string(p)}, {"w", word_of(w)}}));
    }
  }
  return out;
}

std::vector<ReportRow> dims21(Workspace& ws) {
  constexpr std::string_view suite = "dims21";
  const auto& s = ws.scenario();
  const auto group = coxeter::WeylGroup::get(s.datum());
  const auto& regularity = ws.regularity();
  const bool regular = regularity.regular();
  const std::string not_asserted = "element is not regular; recorded only";
  std::vector<ReportRow> rows;
  if (ws.valid_primes().empty()) return rows;
  const auto sample_spec = s.spec(ws.valid_primes().front());
  const int dim_fixed = sample_spec.dim_fixed_torus();

  {
    auto row = make_row(s, suite, "centralizer-degree");
    PointCountSeries series{s.id, "centralizer", {}};
    for (auto p : ws.valid_primes()) {
      try {
        series.counts[p] = ws.centralizer(p);
      } catch (const CapExceeded& e) {
        row = cap_row(s, suite, "centralizer-degree", e, {{"prime", std::to_string(p)}});
        break;
      }
    }
    if (row.status != Status::skipped) {
      row.witness["certificate"] = chevalley::to_string(regularity.kind);
      row.witness["expected_degree"] = std::to_string(dim_fixed);
      if (auto fit = fit_into(row, series, dim_fixed, regular)) {
        if (regular)
          row.status = fit->degree == dim_fixed ? Status::pass : Status::fail;
        else
          row.detail = not_asserted;
      }
    }
    rows.push_back(std::move(row));
  }

  for (const auto& w : s.selected()) {
    std::vector<ReportRow> caps;
    auto per_orbit = orbit_series(ws, w, caps, suite);
    rows.insert(rows.end(), caps.begin(), caps.end());
    for (std::size_t i = 0; i < per_orbit.size(); ++i) {
      auto row = make_row(s, suite, "orbit-variety-degree");
      row.witness["w"] = word_of(w);
      row.witness["orbit"] = std::to_string(i);
      row.witness["expected_degree"] = std::to_string(w.length());
      if (auto fit = fit_into(row, per_orbit[i], w.length(), regular)) {
        if (regular)
          row.status = fit->degree == w.length() ? Status::pass : Status::fail;
        else
          row.detail = not_asserted;
      }
      rows.push_back(std::move(row));
    }

    auto row = make_row(s, suite, "class-cell-degree");
    const int expected = sample_spec.dim_borel() + w.length() - dim_fixed;
    row.witness["w"] = word_of(w);
    row.witness["expected_degree"] = std::to_string(expected);
    PointCountSeries series{s.id, "geometric-class-cell", {}};
    bool capped = false;
    for (auto p : ws.valid_primes()) {
      try {
        series.counts[p] = ws.geometric(p)[group->index_of(w)];
      } catch (const CapExceeded& e) {
        row = cap_row(s, suite, "class-cell-degree", e, {{"prime", std::to_string(p)}, {"w", word_of(w)}});
        capped = true;
        break;
      }
    }
    if (!capped) {
      if (auto fit = fit_into(row, series, expected, regular)) {
        if (regular)
          row.status = fit->degree == expected ? Status::pass : Status::fail;
        else
          row.detail = not_asserted;
      }
      if (s.twist != TwistKind::trivial && row.status != Status::skipped)
        row.detail += (row.detail.empty() ? "" : "; ") + std::string("single rational orbit assumed for the twisted class");
    }
    rows.push_back(std::move(row));
  }

  auto info = make_row(s, suite, "equidimensionality");
  info.detail = "point counts certify the top degree only; equidimensionality is not machine-checked";
  rows.push_back(std::move(info));
  return rows;
}

std::vector<ReportRow> theorem42(Workspace& ws) {
  constexpr std::string_view suite = "theorem42";
  const auto& s = ws.scenario();
  const auto delta = s.automorphism();
  const auto group = coxeter::WeylGroup::get(s.datum());
  const auto& regularity = ws.regularity();
  const bool regular = regularity.regular();
  std::vector<ReportRow> rows;

  for (const auto& w : s.selected()) {
    if (!coxeter::has_full_twisted_support(w, delta)) continue;
    std::vector<ReportRow> caps;
    auto per_orbit = orbit_series(ws, w, caps, suite);
    rows.insert(rows.end(), caps.begin(), caps.end());
    for (std::size_t i = 0; i < per_orbit.size(); ++i) {
      auto row = make_row(s, suite, "orbit-variety-monic");
      row.witness["w"] = word_of(w);
      row.witness["orbit"] = std::to_string(i);
      row.witness["certificate"] = chevalley::to_string(regularity.kind);
      row.witness["expected_degree"] = std::to_string(w.length());
      if (auto fit = fit_into(row, per_orbit[i], w.length(), regular)) {
        if (regular) {
          row.status = fit->degree == w.length() && fit->is_monic ? Status::pass : Status::fail;
        } else {
          row.detail = std::string("element is not regular; observed ") + (fit->is_monic ? "monic" : "non-monic") +
                       " of degree " + std::to_string(fit->degree) + ", recorded only";
        }
      }
      rows.push_back(std::move(row));
    }
  }

  for (auto p : ws.valid_orbit_primes()) {
    const auto spec = s.spec(p);
    if (spec.twist() != TwistKind::trivial) {
      auto row = make_row(s, suite, "fused-orbit-sum");
      row.status = Status::skipped;
      row.witness["prime"] = std::to_string(p);
      row.detail = "orbit fusion is not computed for twisted groups";
      rows.push_back(std::move(row));
      continue;
    }
    try {
      const auto fused = chevalley::fused_orbits_by_search(ws.element(p), spec, s.caps.orbit);
      const auto geometric = ws.geometric(p);
      std::vector<BigInt> summed(geometric.size(), BigInt(0));
      for (const auto& o : fused) {
        const auto cells = counting::class_cell_counts(o, ws.options().exec);
        for (std::size_t c = 0; c < cells.size(); ++c) summed[c] += cells[c];
      }
      for (const auto& w : s.selected()) {
        const auto i = group->index_of(w);
        auto row = make_row(s, suite, "fused-orbit-sum");
        row.witness = {{"prime", std::to_string(p)},
                       {"w", word_of(w)},
                       {"orbits_searched", std::to_string(fused.size())},
                       {"orbits_fused", std::to_string(ws.orbits(p).k())},
                       {"orbit_sum", summed[i].str()},
                       {"geometric", geometric[i].str()}};
        row.status = summed[i] == geometric[i] && fused.size() == ws.orbits(p).k() ? Status::pass : Status::fail;
        rows.push_back(std::move(row));
      }
    } catch (const CapExceeded& e) {
      rows.push_back(cap_row(s, suite, "fused-orbit-sum", e, {{"prime", std::to_string(p)}}));
    }
  }
  return rows;
}

std::vector<ReportRow> dispatch(std::string_view name, Workspace& ws) {
  if (name == "hecke-props") return hecke_props(ws);
  if (name == "kawanaka34") return kawanaka34(ws);
  if (name == "lemma33") return lemma33(ws);
  if (name == "lemma41") return lemma41(ws);
  if (name == "dims21") return dims21(ws);
  if (name == "theorem42") return theorem42(ws);
  throw Error("unknown suite '" + std::string(name) + "'");
}

}  // namespace

std::vector<std::uint32_t> counting_primes(const Scenario& s) {
  s.validate();
  return Workspace(s, {}).valid_primes();
}

bool exceeded_cap(const ReportRow& row) { return is_cap_row(row); }

std::vector<ReportRow> verify_suite(std::string_view name, const Scenario& s, const RunOptions& options) {
  if (!is_suite(name)) throw Error("unknown suite '" + std::string(name) + "'");
  s.validate();
  Workspace ws(s, options);
  return dispatch(name, ws);
}

VerificationReport run_scenario(const Scenario& s, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  s.validate();
  Workspace ws(s, options);
  VerificationReport report;
  report.rows = ws.validity_log();
  for (const auto& name : suite_names()) {
    if (std::find(s.suites.begin(), s.suites.end(), name) == s.suites.end()) continue;
    auto rows = dispatch(name, ws);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    if (name == "hecke-props") report.seeds[s.id] = s.seed;
  }
  report.cap_exceeded = std::any_of(report.rows.begin(), report.rows.end(), is_cap_row);
  report.wall_time_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return report;
}

VerificationReport run_scenarios(const std::vector<Scenario>& scenarios, const RunOptions& options) {
  for (const auto& s : scenarios) s.validate();
  VerificationReport report;
  for (const auto& s : scenarios) report.append(run_scenario(s, options));
  return report;
}

}  // namespace lvc::harness
