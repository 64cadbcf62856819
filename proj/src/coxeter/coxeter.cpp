#include "lvc/coxeter.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "lvc/error.hpp"

namespace lvc::coxeter {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && *(last - 1) == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Coordinates of a vector in the ambient space of the signed-permutation
// model; roots have at most two nonzero coordinates.
struct SparseVector {
  int a = -1, ca = 0;
  int b = -1, cb = 0;
};

bool is_positive(const SparseVector& v) {
  if (v.b < 0) return v.ca > 0;
  return v.a < v.b ? v.ca > 0 : v.cb > 0;
}

SparseVector act(const WeylElement::Image& image, const SparseVector& v) {
  SparseVector out;
  auto map_one = [&](int i, int c, int& pos, int& coef) {
    int img = image[static_cast<std::size_t>(i)];
    pos = std::abs(img) - 1;
    coef = img > 0 ? c : -c;
  };
  map_one(v.a, v.ca, out.a, out.ca);
  if (v.b >= 0) map_one(v.b, v.cb, out.b, out.cb);
  return out;
}

SparseVector simple_root(const CoxeterDatum& d, int s) {
  const int n = d.rank();
  if (d.family() == Family::A || s < n) return {s - 1, 1, s, -1};
  if (d.family() == Family::D) return {n - 2, 1, n - 1, 1};
  return {n - 1, 1, -1, 0};
}

std::vector<SparseVector> positive_roots(const CoxeterDatum& d) {
  std::vector<SparseVector> roots;
  const int m = d.points();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      roots.push_back({i, 1, j, -1});
      if (d.family() != Family::A) roots.push_back({i, 1, j, 1});
    }
    if (d.family() == Family::B || d.family() == Family::C) roots.push_back({i, 1, -1, 0});
  }
  return roots;
}

WeylElement::Image identity_image(const CoxeterDatum& d) {
  WeylElement::Image img{};
  for (int i = 0; i < d.points(); ++i) img[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i + 1);
  return img;
}

WeylElement::Image simple_image(const CoxeterDatum& d, int s) {
  if (s < 1 || s > d.rank()) {
    throw std::out_of_range("simple reflection " + std::to_string(s) + " out of range for " +
                            d.to_string());
  }
  auto img = identity_image(d);
  const int n = d.rank();
  if (d.family() == Family::A || s < n) {
    std::swap(img[static_cast<std::size_t>(s - 1)], img[static_cast<std::size_t>(s)]);
  } else if (d.family() == Family::D) {
    img[static_cast<std::size_t>(n - 2)] = static_cast<std::int8_t>(-n);
    img[static_cast<std::size_t>(n - 1)] = static_cast<std::int8_t>(-(n - 1));
  } else {
    img[static_cast<std::size_t>(n - 1)] = static_cast<std::int8_t>(-n);
  }
  return img;
}

// (x∘y)(e_i) = x(y(e_i))
WeylElement::Image compose(const CoxeterDatum& d, const WeylElement::Image& x,
                           const WeylElement::Image& y) {
  WeylElement::Image out{};
  for (int i = 0; i < d.points(); ++i) {
    int yi = y[static_cast<std::size_t>(i)];
    int xi = x[static_cast<std::size_t>(std::abs(yi) - 1)];
    out[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(yi > 0 ? xi : -xi);
  }
  return out;
}

WeylElement::Image invert(const CoxeterDatum& d, const WeylElement::Image& x) {
  WeylElement::Image out{};
  for (int i = 0; i < d.points(); ++i) {
    int xi = x[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(std::abs(xi) - 1)] =
        static_cast<std::int8_t>(xi > 0 ? i + 1 : -(i + 1));
  }
  return out;
}

bool left_descent(const CoxeterDatum& d, const WeylElement::Image& img, int s) {
  return !is_positive(act(invert(d, img), simple_root(d, s)));
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

// ---------------------------------------------------------------- datum

CoxeterDatum::CoxeterDatum(Family family, int rank) : family_(family), rank_(rank) {
  int min_rank = family == Family::D ? 2 : 1;
  if (rank < min_rank) {
    throw Error("rank " + std::to_string(rank) + " too small for type " +
                                std::string(1, static_cast<char>(family)));
  }
  if (points() > kMaxPoints) {
    throw Error("rank " + std::to_string(rank) + " exceeds the supported maximum");
  }
}

CoxeterDatum CoxeterDatum::parse(std::string_view label) {
  if (label.size() < 2) throw ParseError("bad Coxeter type '" + std::string(label) + "'");
  Family f;
  switch (label[0]) {
    case 'A': f = Family::A; break;
    case 'B': f = Family::B; break;
    case 'C': f = Family::C; break;
    case 'D': f = Family::D; break;
    default: throw ParseError("unsupported Coxeter family in '" + std::string(label) + "'");
  }
  return {f, parse_int(label.substr(1), "rank")};
}

int CoxeterDatum::m(int s, int t) const {
  if (s < 1 || t < 1 || s > rank_ || t > rank_) throw std::out_of_range("simple index out of range");
  if (s == t) return 1;
  if (s > t) std::swap(s, t);
  const int n = rank_;
  switch (family_) {
    case Family::A:
      return t - s == 1 ? 3 : 2;
    case Family::B:
    case Family::C:
      if (s == n - 1 && t == n) return 4;
      return t - s == 1 ? 3 : 2;
    case Family::D:
      if (t == n) return (n >= 3 && s == n - 2) ? 3 : 2;
      return t - s == 1 ? 3 : 2;
  }
  return 2;
}

std::vector<std::vector<int>> CoxeterDatum::coxeter_matrix() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(rank_),
                                    std::vector<int>(static_cast<std::size_t>(rank_)));
  for (int s = 1; s <= rank_; ++s)
    for (int t = 1; t <= rank_; ++t)
      out[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(t - 1)] = m(s, t);
  return out;
}

std::uint64_t CoxeterDatum::order() const {
  switch (family_) {
    case Family::A: return factorial(rank_ + 1);
    case Family::B:
    case Family::C: return (std::uint64_t{1} << rank_) * factorial(rank_);
    case Family::D: return (std::uint64_t{1} << (rank_ - 1)) * factorial(rank_);
  }
  return 0;
}

int CoxeterDatum::num_positive_roots() const {
  switch (family_) {
    case Family::A: return rank_ * (rank_ + 1) / 2;
    case Family::B:
    case Family::C: return rank_ * rank_;
    case Family::D: return rank_ * (rank_ - 1);
  }
  return 0;
}

std::string CoxeterDatum::to_string() const {
  return std::string(1, static_cast<char>(family_)) + std::to_string(rank_);
}

// ---------------------------------------------------------------- element

WeylElement::WeylElement(const CoxeterDatum& datum, const Image& image)
    : datum_(datum), image_(image) {
  // Greedy smallest left descent yields the lexicographically least reduced word.
  Image cur = image;
  const auto id = identity_image(datum);
  while (cur != id) {
    int s = 1;
    while (!left_descent(datum, cur, s)) ++s;
    word_.push_back(s);
    cur = compose(datum, simple_image(datum, s), cur);
  }
}

WeylElement WeylElement::identity(const CoxeterDatum& datum) {
  return {datum, identity_image(datum)};
}

WeylElement WeylElement::simple(const CoxeterDatum& datum, int s) {
  return {datum, simple_image(datum, s)};
}

WeylElement WeylElement::from_word(const CoxeterDatum& datum, std::span<const int> word) {
  auto img = identity_image(datum);
  for (int s : word) img = compose(datum, img, simple_image(datum, s));
  return {datum, img};
}

WeylElement WeylElement::from_signed_permutation(const CoxeterDatum& datum,
                                                 std::span<const int> image) {
  const int m = datum.points();
  if (static_cast<int>(image.size()) != m) {
    throw Error("signed permutation has wrong size for " + datum.to_string());
  }
  Image img{};
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  int negatives = 0;
  for (int i = 0; i < m; ++i) {
    int v = image[static_cast<std::size_t>(i)];
    if (v == 0 || std::abs(v) > m || seen[static_cast<std::size_t>(std::abs(v) - 1)]) {
      throw Error("not a signed permutation");
    }
    seen[static_cast<std::size_t>(std::abs(v) - 1)] = true;
    if (v < 0) ++negatives;
    img[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(v);
  }
  if (datum.family() == Family::A && negatives > 0) {
    throw Error("type A elements carry no signs");
  }
  if (datum.family() == Family::D && negatives % 2 != 0) {
    throw Error("type D elements have an even number of sign changes");
  }
  return {datum, img};
}

WeylElement WeylElement::parse(const CoxeterDatum& datum, std::string_view text) {
  Word word;
  auto trimmed = text;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
  while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
  if (!trimmed.empty()) {
    for (auto part : split(trimmed, ',')) {
      int s = parse_int(part, "simple reflection");
      if (s < 1 || s > datum.rank()) {
        throw ParseError("letter " + std::to_string(s) + " out of range for " + datum.to_string());
      }
      word.push_back(s);
    }
  }
  return from_word(datum, word);
}

WeylElement WeylElement::inverse() const { return {datum_, invert(datum_, image_)}; }

WeylElement WeylElement::times_simple(int s) const {
  return {datum_, compose(datum_, image_, simple_image(datum_, s))};
}

WeylElement WeylElement::simple_times(int s) const {
  return {datum_, compose(datum_, simple_image(datum_, s), image_)};
}

bool WeylElement::is_right_descent(int s) const {
  return !is_positive(act(image_, simple_root(datum_, s)));
}

bool WeylElement::is_left_descent(int s) const { return left_descent(datum_, image_, s); }

std::string WeylElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(word_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const WeylElement& x, const WeylElement& y) {
  if (auto c = x.datum_ <=> y.datum_; c != 0) return c;
  if (auto c = x.length() <=> y.length(); c != 0) return c;
  return x.word_ <=> y.word_;
}

std::uint64_t WeylElement::code() const noexcept {
  std::uint64_t c = 0;
  for (int i = 0; i < kMaxPoints; ++i) {
    c |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(image_[static_cast<std::size_t>(i)]))
         << (8 * i);
  }
  return c;
}

WeylElement multiply(const WeylElement& x, const WeylElement& y) {
  if (x.datum() != y.datum()) {
    throw MismatchError("cannot multiply elements of " + x.datum().to_string() + " and " +
                        y.datum().to_string());
  }
  WeylElement out = x;
  for (int s : y.word()) out = out.times_simple(s);
  return out;
}

WeylElement longest_element(const CoxeterDatum& datum) {
  // w0 = -1 for B/C and for D_n with n even; otherwise reverse the points.
  const int m = datum.points();
  std::vector<int> img(static_cast<std::size_t>(m));
  if (datum.family() == Family::A) {
    for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = m - i;
  } else {
    for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = -(i + 1);
    if (datum.family() == Family::D && m % 2 == 1) img[static_cast<std::size_t>(m - 1)] = m;
  }
  return WeylElement::from_signed_permutation(datum, img);
}

Subset support(const WeylElement& w) {
  std::set<int> letters(w.word().begin(), w.word().end());
  return {letters.begin(), letters.end()};
}

// ---------------------------------------------------------------- automorphisms

DiagramAutomorphism::DiagramAutomorphism(const CoxeterDatum& datum, std::vector<int> images)
    : datum_(datum), images_(std::move(images)) {
  const int n = datum.rank();
  if (static_cast<int>(images_.size()) != n) {
    throw Error("automorphism must permute all " + std::to_string(n) + " nodes");
  }
  std::vector<int> sorted = images_;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    if (sorted[static_cast<std::size_t>(i)] != i + 1) {
      throw Error("automorphism is not a permutation of the simple set");
    }
  }
  for (int s = 1; s <= n; ++s)
    for (int t = 1; t <= n; ++t)
      if (datum.m((*this)(s), (*this)(t)) != datum.m(s, t)) {
        throw Error("permutation does not preserve the Coxeter matrix");
      }
  std::vector<int> cur(static_cast<std::size_t>(n));
  std::iota(cur.begin(), cur.end(), 1);
  order_ = 0;
  do {
    for (auto& c : cur) c = (*this)(c);
    ++order_;
  } while (!std::is_sorted(cur.begin(), cur.end()) || cur.front() != 1);
  if (order_ > 2) {
    throw Error("only diagram automorphisms of order at most 2 are supported");
  }
}

DiagramAutomorphism DiagramAutomorphism::identity(const CoxeterDatum& datum) {
  std::vector<int> images(static_cast<std::size_t>(datum.rank()));
  std::iota(images.begin(), images.end(), 1);
  return {datum, std::move(images)};
}

DiagramAutomorphism DiagramAutomorphism::flip(const CoxeterDatum& datum) {
  const int n = datum.rank();
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  if (datum.family() == Family::A) {
    std::reverse(images.begin(), images.end());
  } else if (datum.family() == Family::D && n >= 3) {
    std::swap(images[static_cast<std::size_t>(n - 2)], images[static_cast<std::size_t>(n - 1)]);
  } else {
    throw Error("no diagram flip implemented for " + datum.to_string());
  }
  return {datum, std::move(images)};
}

DiagramAutomorphism DiagramAutomorphism::from_permutation(const CoxeterDatum& datum,
                                                          std::vector<int> images) {
  return {datum, std::move(images)};
}

DiagramAutomorphism DiagramAutomorphism::parse(const CoxeterDatum& datum, std::string_view label) {
  if (label == "id" || label == "trivial") return identity(datum);
  if (label == "flip") return flip(datum);
  if (label.starts_with("perm:")) {
    std::vector<int> images;
    for (auto part : split(label.substr(5), ',')) images.push_back(parse_int(part, "node"));
    return from_permutation(datum, std::move(images));
  }
  throw ParseError("unknown diagram automorphism '" + std::string(label) + "'");
}

std::string DiagramAutomorphism::label() const {
  if (is_identity()) return "id";
  if (datum_.family() == Family::A || datum_.family() == Family::D) {
    try {
      if (*this == flip(datum_)) return "flip";
    } catch (const Error&) {
    }
  }
  std::string out = "perm:";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out;
}

WeylElement apply_automorphism(const DiagramAutomorphism& delta, const WeylElement& w) {
  if (delta.datum() != w.datum()) throw MismatchError("automorphism defined on a different datum");
  Word relabelled;
  relabelled.reserve(w.word().size());
  for (int s : w.word()) relabelled.push_back(delta(s));
  return WeylElement::from_word(w.datum(), relabelled);
}

Subset twisted_support(const WeylElement& w, const DiagramAutomorphism& delta) {
  std::set<int> out;
  WeylElement cur = w;
  for (int i = 0; i < delta.order(); ++i) {
    for (int s : cur.word()) out.insert(s);
    cur = apply_automorphism(delta, cur);
  }
  return {out.begin(), out.end()};
}

bool has_full_twisted_support(const WeylElement& w, const DiagramAutomorphism& delta) {
  return static_cast<int>(twisted_support(w, delta).size()) == w.datum().rank();
}

// ---------------------------------------------------------------- enumeration

std::vector<WeylElement> enumerate_group(const CoxeterDatum& datum, std::uint64_t cap) {
  if (datum.order() > cap) throw CapExceeded("enumerating " + datum.to_string(), datum.order(), cap);
  std::vector<WeylElement> out{WeylElement::identity(datum)};
  std::unordered_map<std::uint64_t, bool> seen{{out.front().code(), true}};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int s = 1; s <= datum.rank(); ++s) {
      auto next = out[head].times_simple(s);
      if (seen.emplace(next.code(), true).second) out.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeylGroup::WeylGroup(const CoxeterDatum& datum, std::uint64_t cap)
    : datum_(datum), elements_(enumerate_group(datum, cap)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].code(), i);
  const auto r = static_cast<std::size_t>(datum.rank());
  right_.resize(elements_.size() * r);
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (int s = 1; s <= datum.rank(); ++s)
      right_[i * r + static_cast<std::size_t>(s - 1)] = index_.at(elements_[i].times_simple(s).code());
}

std::size_t WeylGroup::index_of(const WeylElement& w) const {
  if (w.datum() != datum_) throw MismatchError("element not in " + datum_.to_string());
  return index_.at(w.code());
}

std::shared_ptr<const WeylGroup> WeylGroup::get(const CoxeterDatum& datum, std::uint64_t cap) {
  static std::mutex mutex;
  static std::map<CoxeterDatum, std::shared_ptr<const WeylGroup>> registry;
  std::lock_guard lock(mutex);
  auto it = registry.find(datum);
  if (it != registry.end()) return it->second;
  auto group = std::make_shared<const WeylGroup>(datum, cap);
  registry.emplace(datum, group);
  return group;
}

}  // namespace lvc::coxeter
