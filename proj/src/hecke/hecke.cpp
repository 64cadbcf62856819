#include "lvc/hecke.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "lvc/error.hpp"

namespace lvc::hecke {

namespace {

const IntPolynomial& t_minus_one() {
  static const IntPolynomial p{-1, 1};
  return p;
}

const IntPolynomial& t_poly() {
  static const IntPolynomial p{0, 1};
  return p;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------- algebra

HeckeElement HeckeElement::zero(const CoxeterDatum& datum) { return HeckeElement(WeylGroup::get(datum)); }

HeckeElement HeckeElement::basis(const WeylElement& w) {
  HeckeElement out(WeylGroup::get(w.datum()));
  out.terms_.emplace(out.group_->index_of(w), IntPolynomial{1});
  return out;
}

IntPolynomial HeckeElement::coefficient(const WeylElement& w) const {
  auto it = terms_.find(group_->index_of(w));
  return it == terms_.end() ? IntPolynomial{} : it->second;
}

std::vector<std::pair<WeylElement, IntPolynomial>> HeckeElement::terms() const {
  std::vector<std::pair<WeylElement, IntPolynomial>> out;
  out.reserve(terms_.size());
  for (const auto& [i, c] : terms_) out.emplace_back((*group_)[i], c);
  return out;
}

void HeckeElement::add_index(std::size_t i, const IntPolynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HeckeElement& HeckeElement::add_term(const WeylElement& w, const IntPolynomial& c) {
  add_index(group_->index_of(w), c);
  return *this;
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& other) {
  if (datum() != other.datum()) throw MismatchError("Hecke elements over different data");
  for (const auto& [i, c] : other.terms_) add_index(i, c);
  return *this;
}

HeckeElement& HeckeElement::operator*=(const IntPolynomial& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, coef] : terms_) coef *= c;
  return *this;
}

HeckeElement HeckeElement::times_generator(int s) const {
  HeckeElement out(group_);
  for (const auto& [i, c] : terms_) {
    std::size_t ws = group_->right_multiple(i, s);
    if (group_->is_right_descent(i, s)) {
      out.add_index(i, c * t_minus_one());
      out.add_index(ws, c * t_poly());
    } else {
      out.add_index(ws, c);
    }
  }
  return out;
}

HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) {
  if (a.datum() != b.datum()) {
    throw MismatchError("cannot multiply Hecke elements of " + a.datum().to_string() + " and " +
                        b.datum().to_string());
  }
  HeckeElement out = HeckeElement::zero(a.datum());
  for (const auto& [y, c] : b.terms()) {
    HeckeElement partial = a;
    for (int s : y.word()) partial = partial.times_generator(s);
    partial *= c;
    out += partial;
  }
  return out;
}

IntPolynomial coefficient(const HeckeElement& a, const WeylElement& w) { return a.coefficient(w); }

// ---------------------------------------------------------------- cache

std::string KawanakaCache::file_name(const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str() + ".coef";
}

void KawanakaCache::set_directory(std::optional<std::filesystem::path> directory) {
  std::unique_lock lock(mutex_);
  directory_ = std::move(directory);
  if (directory_) std::filesystem::create_directories(*directory_);
}

std::optional<IntPolynomial> KawanakaCache::load(const std::string& key) const {
  if (!directory_) return std::nullopt;
  std::ifstream in(*directory_ / file_name(key));
  if (!in) return std::nullopt;
  std::string stored_key, coeffs;
  std::getline(in, stored_key);
  std::getline(in, coeffs);
  if (stored_key != key) return std::nullopt;
  return IntPolynomial::parse_coefficients(coeffs);
}

void KawanakaCache::store(const std::string& key, const IntPolynomial& value) const {
  if (!directory_) return;
  auto final_path = *directory_ / file_name(key);
  auto tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << key << '\n' << value.to_coefficient_string() << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
}

IntPolynomial KawanakaCache::get_or_compute(const std::string& key,
                                            const std::function<IntPolynomial()>& compute) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  IntPolynomial value;
  if (auto loaded = load(key)) {
    value = std::move(*loaded);
  } else {
    value = compute();
    ++computed_;
    store(key, value);
  }
  memo_.emplace(key, value);
  return value;
}

std::size_t KawanakaCache::size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

void KawanakaCache::clear() {
  std::unique_lock lock(mutex_);
  memo_.clear();
}

KawanakaCache& default_cache() {
  static KawanakaCache cache;
  static std::once_flag once;
  std::call_once(once, [] {
    if (const char* dir = std::getenv("LVC_CACHE_DIR"); dir && *dir) cache.set_directory(dir);
  });
  return cache;
}

// ---------------------------------------------------------------- twisted coefficients

IntPolynomial kawanaka_coefficient(const WeylElement& w, const WeylElement& w_prime,
                                   const DiagramAutomorphism& delta, KawanakaCache* cache) {
  if (w.datum() != w_prime.datum() || delta.datum() != w.datum()) {
    throw MismatchError("kawanaka_coefficient arguments over different data");
  }
  auto compute = [&] {
    const auto w0 = coxeter::longest_element(w.datum());
    const auto right = multiply(apply_automorphism(delta, w_prime).inverse(), w0);
    const auto target = multiply(w_prime.inverse(), w0);
    return multiply(HeckeElement::basis(w), HeckeElement::basis(right)).coefficient(target);
  };
  if (!cache) return compute();
  const std::string key = w.datum().to_string() + "|" + delta.label() + "|" + w.to_string() + "|" +
                          w_prime.to_string();
  return cache->get_or_compute(key, compute);
}

IntPolynomial dm_sum(const WeylElement& w, const DiagramAutomorphism& delta, KawanakaCache* cache) {
  IntPolynomial total;
  for (const auto& w_prime : WeylGroup::get(w.datum())->elements()) {
    total += kawanaka_coefficient(w, w_prime, delta, cache);
  }
  return total;
}

namespace {

std::string word(const WeylElement& w) { return w.length() == 0 ? "e" : w.to_string(); }

}  // namespace

std::string hecke_table_csv(const CoxeterDatum& datum, const DiagramAutomorphism& delta,
                            KawanakaCache* cache) {
  std::string out = "type,delta,w,w_prime,coefficient\n";
  const auto group = WeylGroup::get(datum);
  for (const auto& w : group->elements()) {
    for (const auto& wp : group->elements()) {
      auto coefficient = kawanaka_coefficient(w, wp, delta, cache).to_coefficient_string();
      if (coefficient.empty()) coefficient = "0";
      out += datum.to_string() + "," + csv_quote(delta.label()) + "," + csv_quote(word(w)) + "," +
             csv_quote(word(wp)) + "," + coefficient + "\n";
    }
  }
  return out;
}

}  // namespace lvc::hecke
