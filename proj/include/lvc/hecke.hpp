#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lvc/coxeter.hpp"
#include "lvc/polynomial.hpp"

namespace lvc::hecke {

using coxeter::CoxeterDatum;
using coxeter::DiagramAutomorphism;
using coxeter::WeylElement;
using coxeter::WeylGroup;

/// Element of the Iwahori–Hecke algebra in the standard basis {T_w},
/// with coefficients in Z[t]. Zero coefficients are never stored.
class HeckeElement {
 public:
  static HeckeElement zero(const CoxeterDatum& datum);
  /// T_w
  static HeckeElement basis(const WeylElement& w);

  const CoxeterDatum& datum() const noexcept { return group_->datum(); }
  const WeylGroup& group() const noexcept { return *group_; }

  /// [A : T_w]
  IntPolynomial coefficient(const WeylElement& w) const;
  std::vector<std::pair<WeylElement, IntPolynomial>> terms() const;
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Right multiplication by a generator: T_w·T_s = T_ws when ws > w, and
  /// (t-1)T_w + t·T_ws otherwise.
  HeckeElement times_generator(int s) const;

  HeckeElement& add_term(const WeylElement& w, const IntPolynomial& c);
  HeckeElement& operator+=(const HeckeElement& other);
  HeckeElement& operator*=(const IntPolynomial& c);

  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.datum() == b.datum() && a.terms_ == b.terms_;
  }

 private:
  explicit HeckeElement(std::shared_ptr<const WeylGroup> group) : group_(std::move(group)) {}
  void add_index(std::size_t i, const IntPolynomial& c);

  std::shared_ptr<const WeylGroup> group_;
  std::map<std::size_t, IntPolynomial> terms_;  // keyed by index in (length, word) order
};

HeckeElement multiply(const HeckeElement& a, const HeckeElement& b);
IntPolynomial coefficient(const HeckeElement& a, const WeylElement& w);

/// Thread-safe get-or-compute store for twisted structure constants,
/// optionally mirrored on disk (one file per key, named by a content hash).
class KawanakaCache {
 public:
  KawanakaCache() = default;
  explicit KawanakaCache(std::filesystem::path directory) { set_directory(std::move(directory)); }

  void set_directory(std::optional<std::filesystem::path> directory);
  const std::optional<std::filesystem::path>& directory() const noexcept { return directory_; }

  IntPolynomial get_or_compute(const std::string& key, const std::function<IntPolynomial()>& compute);
  std::size_t size() const;
  void clear();

  std::uint64_t computed() const noexcept { return computed_; }

  static std::string file_name(const std::string& key);

 private:
  std::optional<IntPolynomial> load(const std::string& key) const;
  void store(const std::string& key, const IntPolynomial& value) const;

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, IntPolynomial> memo_;
  std::optional<std::filesystem::path> directory_;
  std::uint64_t computed_ = 0;
};

/// Process-wide cache; its directory defaults to $LVC_CACHE_DIR when set.
KawanakaCache& default_cache();

/// [T_w T_{δ(w')^{-1} w0} : T_{w'^{-1} w0}]. Pass `cache = nullptr` to bypass caching.
IntPolynomial kawanaka_coefficient(const WeylElement& w, const WeylElement& w_prime,
                                   const DiagramAutomorphism& delta,
                                   KawanakaCache* cache = &default_cache());

/// Sum of kawanaka_coefficient(w, w', δ) over all w'.
IntPolynomial dm_sum(const WeylElement& w, const DiagramAutomorphism& delta,
                     KawanakaCache* cache = &default_cache());

/// CSV with header `type,delta,w,w_prime,coefficient`, one row per pair.
std::string hecke_table_csv(const CoxeterDatum& datum, const DiagramAutomorphism& delta,
                            KawanakaCache* cache = &default_cache());

}  // namespace lvc::hecke
