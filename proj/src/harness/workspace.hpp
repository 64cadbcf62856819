#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lvc/error.hpp"
#include "lvc/harness.hpp"

namespace lvc::harness::detail {

using chevalley::MatrixFq;
using coxeter::WeylElement;
using counting::CellTally;
using counting::FittedPolynomial;
using counting::PointCountSeries;

inline std::string word_of(const WeylElement& w) { return w.length() == 0 ? "e" : w.to_string(); }

inline std::string series_text(const PointCountSeries& series) {
  std::string out;
  for (const auto& [p, c] : series.counts) out += (out.empty() ? "" : ",") + std::to_string(p) + ":" + c.str();
  return out;
}

inline BigInt power(std::uint32_t base, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

inline int longest_length(const coxeter::CoxeterDatum& d) { return coxeter::longest_element(d).length(); }

/// Memoized per-prime data shared by the suites of one scenario.
class Workspace {
 public:
  Workspace(const Scenario& s, const RunOptions& options) : s_(s), options_(options) { resolve_primes(); }

  const Scenario& scenario() const { return s_; }
  const RunOptions& options() const { return options_; }
  const std::vector<std::uint32_t>& raw_primes() const { return raw_primes_; }
  const std::vector<std::uint32_t>& valid_primes() const { return valid_primes_; }
  const std::vector<std::uint32_t>& valid_orbit_primes() const { return valid_orbit_primes_; }
  const std::vector<ReportRow>& validity_log() const { return validity_log_; }

  MatrixFq element(std::uint32_t p) const { return s_.element->instantiate(p); }

  const CellTally& unipotent(std::uint32_t p, const WeylElement& w_prime) {
    const auto key = std::make_pair(p, w_prime.code());
    auto it = unipotent_.find(key);
    if (it == unipotent_.end())
      it = unipotent_.emplace(key, counting::unipotent_cell_counts(s_.spec(p), w_prime, s_.caps.unipotent, options_.exec))
               .first;
    return it->second;
  }

  /// Rational orbit representatives of the geometric class at p; a single
  /// representative for twisted groups.
  const chevalley::GeometricClass& orbits(std::uint32_t p) {
    auto it = classes_.find(p);
    if (it == classes_.end()) {
      const auto spec = s_.spec(p);
      const auto h = element(p);
      chevalley::GeometricClass geo;
      if (spec.twist() == TwistKind::trivial) {
        geo = chevalley::geometric_class(h, spec, s_.caps.centralizer);
      } else {
        geo.representatives.push_back(h);
        geo.centralizer_orders.push_back(chevalley::centralizer_order(h, spec, s_.caps.centralizer));
      }
      it = classes_.emplace(p, std::move(geo)).first;
    }
    return it->second;
  }

  const CellTally& lusztig(std::uint32_t p, std::size_t orbit_index) {
    const auto key = std::make_pair(p, orbit_index);
    auto it = lusztig_.find(key);
    if (it == lusztig_.end()) {
      const auto& h = orbits(p).representatives.at(orbit_index);
      it = lusztig_.emplace(key, counting::lusztig_counts(s_.spec(p), h, s_.caps.flag, options_.exec)).first;
    }
    return it->second;
  }

  /// Σ_i |Y_{w,h_i}|·|B^F| / |Z(h_i)| for every w.
  std::vector<BigInt> geometric(std::uint32_t p) {
    const auto& geo = orbits(p);
    const auto borel = s_.spec(p).borel_order();
    std::vector<BigInt> total;
    for (std::size_t i = 0; i < geo.k(); ++i) {
      const auto& y = lusztig(p, i);
      total.resize(y.size(), BigInt(0));
      for (std::size_t c = 0; c < y.size(); ++c) {
        const BigInt scaled = BigInt(y[c]) * borel;
        if (scaled % geo.centralizer_orders[i] != 0) throw Error("class-cell count is not an integer");
        total[c] += scaled / geo.centralizer_orders[i];
      }
    }
    return total;
  }

  BigInt centralizer(std::uint32_t p) { return orbits(p).centralizer_orders.at(0); }

  /// The base orbit at p, after an up-front size estimate against the cap.
  const chevalley::TwistedClassOrbit& orbit(std::uint32_t p) {
    auto it = orbit_.find(p);
    if (it == orbit_.end()) {
      const auto spec = s_.spec(p);
      const BigInt size = spec.order() / centralizer(p);
      if (size > s_.caps.orbit)
        throw CapExceeded("orbit of " + s_.element->text() + " in " + spec.to_string(),
                          static_cast<std::uint64_t>(size), s_.caps.orbit);
      it = orbit_.emplace(p, chevalley::orbit(element(p), spec, s_.caps.orbit, options_.exec)).first;
    }
    return it->second;
  }

  /// Regularity of the scenario element, decided once for the whole family.
  const chevalley::RegularityCertificate& regularity() {
    if (!regularity_) {
      chevalley::RegularityCertificate cert;
      if (s_.twist == TwistKind::trivial) {
        cert.kind = RegularKind::not_regular;
        bool all_regular = !valid_primes_.empty();
        for (auto p : valid_primes_) {
          const auto c = chevalley::is_regular(element(p), s_.spec(p));
          if (!c.regular()) {
            all_regular = false;
            cert.evidence = "p=" + std::to_string(p) + ": " + c.evidence;
            break;
          }
          cert.kind = c.kind;
        }
        if (!all_regular) cert.kind = RegularKind::not_regular;
        if (all_regular) cert.evidence = "regular at every valid prime";
      } else {
        std::map<std::uint32_t, BigInt> orders;
        try {
          for (auto p : valid_primes_) orders[p] = centralizer(p);
          cert = chevalley::is_regular_twisted(orders, s_.spec(valid_primes_.front()).dim_fixed_torus());
        } catch (const Error& e) {
          cert = {RegularKind::not_regular, e.what(), {}};
        }
      }
      regularity_ = cert;
    }
    return *regularity_;
  }

 private:
  std::size_t needed_primes() const {
    int bound = 0;
    const auto d = s_.datum();
    const int top = longest_length(d);
    const auto delta = s_.automorphism();
    for (const auto& name : s_.suites) {
      for (const auto& w : s_.selected()) {
        const bool full = coxeter::has_full_twisted_support(w, delta);
        if (name == "lemma33" && full) bound = std::max(bound, w.length() + top);
        if (name == "theorem42" && full) bound = std::max(bound, w.length());
        if (name == "dims21" && s_.family) {
          const auto spec = s_.spec(2);
          bound = std::max({bound, w.length(), spec.dim_borel() + w.length() - spec.dim_fixed_torus(),
                            spec.dim_fixed_torus()});
        }
      }
    }
    return static_cast<std::size_t>(bound) + 3;
  }

  void resolve_primes() {
    if (!s_.family) return;
    auto log_invalid = [&](std::uint32_t p, const std::string& reason) {
      if (!logged_.insert(p).second) return;
      ReportRow row{s_.id, "prime-validity", "scenario", Status::skipped, {{"prime", std::to_string(p)}}, reason};
      validity_log_.push_back(std::move(row));
    };
    if (!s_.primes.empty()) {
      raw_primes_ = s_.primes;
    } else {
      const auto needed = needed_primes();
      for (std::uint32_t p = 2; raw_primes_.size() < needed && p < 1000; ++p)
        if (matfq::is_prime(p) && check_prime(s_, p).valid) raw_primes_.push_back(p);
    }
    for (auto p : raw_primes_) {
      const auto v = check_prime(s_, p);
      if (v.valid)
        valid_primes_.push_back(p);
      else
        log_invalid(p, v.reason);
    }
    for (auto p : s_.orbit_primes.empty() ? raw_primes_ : s_.orbit_primes) {
      const auto v = check_prime(s_, p);
      if (v.valid)
        valid_orbit_primes_.push_back(p);
      else
        log_invalid(p, v.reason);
    }
  }

  const Scenario& s_;
  RunOptions options_;
  std::vector<std::uint32_t> raw_primes_;
  std::vector<std::uint32_t> valid_primes_;
  std::vector<std::uint32_t> valid_orbit_primes_;
  std::vector<ReportRow> validity_log_;
  std::set<std::uint32_t> logged_;
  std::map<std::pair<std::uint32_t, std::uint64_t>, CellTally> unipotent_;
  std::map<std::uint32_t, chevalley::GeometricClass> classes_;
  std::map<std::pair<std::uint32_t, std::size_t>, CellTally> lusztig_;
  std::map<std::uint32_t, chevalley::TwistedClassOrbit> orbit_;
  std::optional<chevalley::RegularityCertificate> regularity_;
};

}  // namespace lvc::harness::detail
