#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lvc::coxeter {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D' };

/// Largest number of points in the signed-permutation model (A7, B8, D8).
inline constexpr int kMaxPoints = 8;

inline constexpr std::uint64_t kDefaultGroupCap = 10'000;

/// A letter is a 1-based index into the simple set.
using Word = std::vector<int>;
/// Sorted, duplicate-free set of simple-reflection indices.
using Subset = std::vector<int>;

/// Finite Coxeter datum of classical type.
///
/// Elements are modelled as signed permutations of `points()` coordinates:
/// type A_n acts on n+1 points with no signs, B_n/C_n on n points with
/// arbitrary signs, D_n on n points with an even number of sign changes.
class CoxeterDatum {
 public:
  CoxeterDatum(Family family, int rank);

  /// Parses labels such as "A2", "B3", "D4".
  static CoxeterDatum parse(std::string_view label);

  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  int points() const noexcept { return family_ == Family::A ? rank_ + 1 : rank_; }

  /// Coxeter matrix entry m(s, t) for 1-based s, t.
  int m(int s, int t) const;
  std::vector<std::vector<int>> coxeter_matrix() const;

  /// Group order from the classical closed formulas.
  std::uint64_t order() const;
  int num_positive_roots() const;

  std::string to_string() const;

  friend bool operator==(const CoxeterDatum&, const CoxeterDatum&) = default;
  friend auto operator<=>(const CoxeterDatum&, const CoxeterDatum&) = default;

 private:
  Family family_;
  int rank_;
};

/// Element of a finite Weyl group, stored as a signed permutation together
/// with its length and lexicographically least reduced word.
class WeylElement {
 public:
  using Image = std::array<std::int8_t, kMaxPoints>;

  static WeylElement identity(const CoxeterDatum& datum);
  static WeylElement simple(const CoxeterDatum& datum, int s);
  static WeylElement from_word(const CoxeterDatum& datum, std::span<const int> word);
  /// `image[i] = ±(j+1)` means the element maps e_i to ±e_j.
  static WeylElement from_signed_permutation(const CoxeterDatum& datum, std::span<const int> image);
  /// Inverse of `to_string`: comma-separated letters, empty for the identity.
  static WeylElement parse(const CoxeterDatum& datum, std::string_view text);

  const CoxeterDatum& datum() const noexcept { return datum_; }
  int length() const noexcept { return static_cast<int>(word_.size()); }
  const Word& word() const noexcept { return word_; }
  std::span<const std::int8_t> image() const noexcept {
    return {image_.data(), static_cast<std::size_t>(datum_.points())};
  }
  bool is_identity() const noexcept { return word_.empty(); }

  WeylElement inverse() const;
  /// w·s
  WeylElement times_simple(int s) const;
  /// s·w
  WeylElement simple_times(int s) const;
  bool is_right_descent(int s) const;
  bool is_left_descent(int s) const;

  std::string to_string() const;

  friend bool operator==(const WeylElement& x, const WeylElement& y) noexcept {
    return x.datum_ == y.datum_ && x.image_ == y.image_;
  }
  /// Orders by (length, canonical word) within one datum.
  friend std::strong_ordering operator<=>(const WeylElement& x, const WeylElement& y);

  std::uint64_t code() const noexcept;

 private:
  WeylElement(const CoxeterDatum& datum, const Image& image);

  CoxeterDatum datum_;
  Image image_{};
  Word word_;
};

WeylElement multiply(const WeylElement& x, const WeylElement& y);
WeylElement longest_element(const CoxeterDatum& datum);
Subset support(const WeylElement& w);

/// Automorphism of the Coxeter graph, given as a permutation of the simple set.
class DiagramAutomorphism {
 public:
  static DiagramAutomorphism identity(const CoxeterDatum& datum);
  /// i -> n+1-i on A_n; swaps the two short legs n-1, n on D_n.
  static DiagramAutomorphism flip(const CoxeterDatum& datum);
  /// `images[s-1]` is the image of s. Rejects maps that do not preserve the
  /// Coxeter matrix and the order-3 triality of D4.
  static DiagramAutomorphism from_permutation(const CoxeterDatum& datum, std::vector<int> images);
  /// "id", "flip", or "perm:a,b,c".
  static DiagramAutomorphism parse(const CoxeterDatum& datum, std::string_view label);

  const CoxeterDatum& datum() const noexcept { return datum_; }
  int operator()(int s) const { return images_.at(static_cast<std::size_t>(s - 1)); }
  const std::vector<int>& images() const noexcept { return images_; }
  int order() const noexcept { return order_; }
  bool is_identity() const noexcept { return order_ == 1; }
  std::string label() const;

  friend bool operator==(const DiagramAutomorphism&, const DiagramAutomorphism&) = default;

 private:
  DiagramAutomorphism(const CoxeterDatum& datum, std::vector<int> images);

  CoxeterDatum datum_;
  std::vector<int> images_;
  int order_ = 1;
};

WeylElement apply_automorphism(const DiagramAutomorphism& delta, const WeylElement& w);
/// Smallest delta-stable subset J with w in W_J.
Subset twisted_support(const WeylElement& w, const DiagramAutomorphism& delta);
bool has_full_twisted_support(const WeylElement& w, const DiagramAutomorphism& delta);

/// All elements, sorted by (length, canonical word).
std::vector<WeylElement> enumerate_group(const CoxeterDatum& datum,
                                         std::uint64_t cap = kDefaultGroupCap);

/// Enumerated group with index tables for right multiplication by
/// generators. Instances are shared and immutable.
class WeylGroup {
 public:
  static std::shared_ptr<const WeylGroup> get(const CoxeterDatum& datum,
                                              std::uint64_t cap = kDefaultGroupCap);

  const CoxeterDatum& datum() const noexcept { return datum_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const WeylElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<WeylElement>& elements() const noexcept { return elements_; }
  std::size_t index_of(const WeylElement& w) const;
  /// Index of elements_[i]·s.
  std::size_t right_multiple(std::size_t i, int s) const {
    return right_[i * static_cast<std::size_t>(datum_.rank()) + static_cast<std::size_t>(s - 1)];
  }
  bool is_right_descent(std::size_t i, int s) const {
    return elements_[right_multiple(i, s)].length() < elements_[i].length();
  }
  std::size_t longest_index() const noexcept { return elements_.size() - 1; }

  explicit WeylGroup(const CoxeterDatum& datum, std::uint64_t cap);

 private:
  CoxeterDatum datum_;
  std::vector<WeylElement> elements_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::size_t> right_;
};

}  // namespace lvc::coxeter

template <>
struct std::hash<lvc::coxeter::WeylElement> {
  std::size_t operator()(const lvc::coxeter::WeylElement& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.code()) ^ (static_cast<std::size_t>(w.datum().rank()) << 56);
  }
};
