#include <json.hpp>

#include "lvc/harness.hpp"
#include "workspace.hpp"

namespace lvc::harness {

using namespace detail;

std::vector<CountRecord> count_table(const Scenario& s, std::string_view quantity, const RunOptions& options) {
  s.validate();
  if (!s.has_group()) throw Error("count tables need a group scenario");
  Workspace ws(s, options);
  const auto group = coxeter::WeylGroup::get(s.datum());
  const auto selected = s.selected();
  std::vector<CountRecord> out;
  if (quantity == "unipotent-cell") {
    for (auto p : ws.raw_primes())
      for (const auto& wp : group->elements()) {
        const auto& counts = ws.unipotent(p, wp);
        for (const auto& w : selected)
          out.push_back({s.id, std::string(quantity), word_of(w), word_of(wp), p, BigInt(counts[group->index_of(w)])});
      }
    return out;
  }
  if (!s.element) throw Error("quantity '" + std::string(quantity) + "' needs an element template");
  if (quantity == "lusztig") {
    for (auto p : ws.valid_primes())
      for (std::size_t i = 0; i < ws.orbits(p).k(); ++i) {
        const auto& counts = ws.lusztig(p, i);
        for (const auto& w : selected)
          out.push_back({s.id, "lusztig-orbit-" + std::to_string(i), word_of(w), "", p, BigInt(counts[group->index_of(w)])});
      }
  } else if (quantity == "class-cell") {
    for (auto p : ws.valid_orbit_primes()) {
      const auto cells = counting::class_cell_counts(ws.orbit(p), options.exec);
      for (const auto& w : selected)
        out.push_back({s.id, std::string(quantity), word_of(w), "", p, BigInt(cells[group->index_of(w)])});
    }
  } else if (quantity == "geometric-class-cell") {
    for (auto p : ws.valid_primes()) {
      const auto counts = ws.geometric(p);
      for (const auto& w : selected) out.push_back({s.id, std::string(quantity), word_of(w), "", p, counts[group->index_of(w)]});
    }
  } else {
    throw Error("unknown quantity '" + std::string(quantity) + "'");
  }
  return out;
}

std::string count_table_csv(const std::vector<CountRecord>& records) {
  std::string out = "scenario,quantity,w,w',prime,count\n";
  for (const auto& r : records)
    out += r.scenario + "," + r.quantity + "," + r.w + "," + r.w_prime + "," + std::to_string(r.prime) + "," +
           r.count.str() + "\n";
  return out;
}

std::vector<counting::PointCountSeries> group_series(const std::vector<CountRecord>& records,
                                                     std::vector<std::pair<std::string, std::string>>* labels) {
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  std::vector<counting::PointCountSeries> out;
  if (labels) labels->clear();
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.quantity, r.w, r.w_prime);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back({r.scenario, r.quantity, {}});
      if (labels) labels->emplace_back(r.w, r.w_prime);
    }
    out[it->second].counts[r.prime] = r.count;
  }
  return out;
}

namespace {

nlohmann::ordered_json rational_json(const Rational& q) {
  return {{"numerator", boost::multiprecision::numerator(q).str()},
          {"denominator", boost::multiprecision::denominator(q).str()}};
}

}  // namespace

std::string fit_table_json(const std::vector<CountRecord>& records, int degree_bound) {
  std::vector<std::pair<std::string, std::string>> labels;
  const auto series = group_series(records, &labels);
  auto out = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    nlohmann::ordered_json j;
    j["scenario"] = series[i].scenario;
    j["quantity"] = series[i].quantity;
    j["w"] = labels[i].first;
    j["w_prime"] = labels[i].second;
    j["primes"] = nlohmann::ordered_json::array();
    for (const auto& [p, c] : series[i].counts) j["primes"].push_back(p);
    try {
      const auto fit =
          degree_bound < 0 ? counting::fit_polynomial(series[i]) : counting::fit_polynomial(series[i], degree_bound);
      j["degree"] = fit.degree;
      j["coefficients"] = nlohmann::ordered_json::array();
      for (const auto& c : fit.polynomial.coefficients()) j["coefficients"].push_back(rational_json(c));
      j["is_integer_coefficients"] = fit.is_integer_coefficients;
      j["is_monic"] = fit.is_monic;
      j["leading_coefficient"] = rational_json(fit.leading_coefficient);
      j["points_used"] = fit.points_used;
      j["points_checked"] = fit.points_checked;
    } catch (const FitError& e) {
      j["error"] = e.what();
    }
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

}  // namespace lvc::harness
