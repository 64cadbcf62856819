#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lvc/error.hpp"
#include "lvc/harness.hpp"

namespace lvc::harness {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    auto piece = trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("key '" + key + "': expected a nonnegative integer, got '" + value + "'");
  }
}

std::vector<std::uint32_t> parse_primes(const std::string& key, const std::string& value) {
  std::vector<std::uint32_t> out;
  for (const auto& piece : split(value, ',')) {
    const auto p = parse_unsigned(key, piece);
    if (p > 0xFFFF || !matfq::is_prime(static_cast<std::uint32_t>(p)))
      throw ParseError("key '" + key + "': " + piece + " is not a supported prime");
    out.push_back(static_cast<std::uint32_t>(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"family", "n",         "type",          "twist",       "primes",
                                          "orbit_primes", "element", "kind", "factor_degrees",      "weyl",        "suites",
                                          "orbit_cap", "flag_cap", "unipotent_cap", "centralizer_cap", "seed",
                                          "samples"};
  return keys;
}

Scenario scenario_from_section(const std::string& id, const boost::property_tree::ptree& section) {
  Scenario s;
  s.id = id;
  std::map<std::string, std::string> values;
  for (const auto& [key, node] : section) {
    if (!known_keys().contains(key)) throw ParseError("scenario '" + id + "': unknown key '" + key + "'");
    values[key] = trim(node.data());
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };
  try {
    if (auto v = get("twist")) s.twist = matfq::parse_twist(*v);
    if (auto v = get("family")) s.family = chevalley::parse_family(*v);
    if (auto v = get("n")) s.n = static_cast<int>(parse_unsigned("n", *v));
    if (auto v = get("type")) s.type = coxeter::CoxeterDatum::parse(*v);
    if (auto v = get("primes")) s.primes = parse_primes("primes", *v);
    if (auto v = get("orbit_primes")) s.orbit_primes = parse_primes("orbit_primes", *v);
    if (auto v = get("element")) s.element = ElementTemplate::parse(*v);
    if (auto v = get("kind")) s.kind = chevalley::parse_regular_kind(*v);
    if (auto v = get("factor_degrees")) {
      std::vector<int> degrees;
      for (const auto& piece : split(*v, ',')) degrees.push_back(static_cast<int>(parse_unsigned("factor_degrees", piece)));
      std::sort(degrees.begin(), degrees.end());
      s.factor_degrees = degrees;
    }
    if (auto v = get("weyl")) s.weyl = WeylSelection::parse(*v);
    if (auto v = get("suites")) s.suites = split(*v, ',');
    if (auto v = get("orbit_cap")) s.caps.orbit = parse_unsigned("orbit_cap", *v);
    if (auto v = get("flag_cap")) s.caps.flag = parse_unsigned("flag_cap", *v);
    if (auto v = get("unipotent_cap")) s.caps.unipotent = parse_unsigned("unipotent_cap", *v);
    if (auto v = get("centralizer_cap")) s.caps.centralizer = parse_unsigned("centralizer_cap", *v);
    if (auto v = get("seed")) s.seed = parse_unsigned("seed", *v);
    if (auto v = get("samples")) s.samples = static_cast<std::uint32_t>(parse_unsigned("samples", *v));
  } catch (const ParseError& e) {
    throw ParseError("scenario '" + id + "': " + e.what());
  } catch (const Error& e) {
    throw ParseError("scenario '" + id + "': " + e.what());
  }
  if (s.family && s.n == 0 && s.element) s.n = s.element->dimension();
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hecke-props", "kawanaka34", "lemma33", "lemma41", "dims21", "theorem42"};
  return names;
}

bool is_suite(std::string_view name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

WeylSelection WeylSelection::parse(std::string_view text) {
  const auto t = trim(text);
  WeylSelection sel;
  if (t == "all") return sel;
  if (t == "full-support") {
    sel.mode = Mode::full_support;
    return sel;
  }
  constexpr std::string_view prefix = "explicit:";
  if (t.starts_with(prefix)) {
    sel.mode = Mode::explicit_list;
    for (auto& word : split(std::string_view(t).substr(prefix.size()), '|')) sel.words.push_back(word == "e" ? "" : word);
    if (sel.words.empty()) throw ParseError("explicit Weyl selection lists no elements");
    return sel;
  }
  throw ParseError("unknown Weyl selection '" + t + "'");
}

std::string WeylSelection::to_string() const {
  switch (mode) {
    case Mode::all:
      return "all";
    case Mode::full_support:
      return "full-support";
    case Mode::explicit_list: {
      std::string out = "explicit:";
      for (std::size_t i = 0; i < words.size(); ++i) out += (i ? "|" : "") + (words[i].empty() ? std::string("e") : words[i]);
      return out;
    }
  }
  return "all";
}

coxeter::CoxeterDatum Scenario::datum() const {
  if (family) return {coxeter::Family::A, n - 1};
  if (type) return *type;
  throw Error("scenario '" + id + "' names neither a group family nor a Coxeter type");
}

coxeter::DiagramAutomorphism Scenario::automorphism() const {
  if (family) return GroupSpec(*family, n, 2, twist).weyl_automorphism();
  const auto d = datum();
  return twist == TwistKind::flip ? coxeter::DiagramAutomorphism::flip(d) : coxeter::DiagramAutomorphism::identity(d);
}

GroupSpec Scenario::spec(std::uint32_t p) const {
  if (!family) throw Error("scenario '" + id + "' has no group family");
  return {*family, n, p, twist};
}

void Scenario::validate() const {
  auto fail = [&](const std::string& why) { throw Error("scenario '" + id + "': " + why); };
  if (suites.empty()) fail("no suites requested");
  for (const auto& name : suites)
    if (!is_suite(name)) fail("unknown suite '" + name + "'");
  if (!family && !type) fail("needs either family and n, or type");
  if (family && type) fail("family and type are mutually exclusive");
  if (family) {
    if (n < 2 || n > matfq::kMaxDim) fail("n must lie in [2, " + std::to_string(matfq::kMaxDim) + "]");
    if (element && element->dimension() != n)
      fail("element template has dimension " + std::to_string(element->dimension()) + ", expected " + std::to_string(n));
  }
  const bool group_suites =
      std::any_of(suites.begin(), suites.end(), [](const std::string& name) { return name != "hecke-props"; });
  if (group_suites && !family) fail("group suites need a family");
  for (const auto& name : suites)
    if ((name == "lemma41" || name == "dims21" || name == "theorem42") && !element)
      fail("suite '" + name + "' needs an element template");
  if (twist == TwistKind::trivial && kind == RegularKind::twisted) fail("kind 'twisted' needs a twisted group");
  if (kind == RegularKind::nonsplit && !factor_degrees) fail("nonsplit kinds need factor_degrees");
  if (group_suites && selected().empty()) fail("Weyl selection is empty");
}

std::vector<coxeter::WeylElement> Scenario::selected() const {
  const auto d = datum();
  const auto group = coxeter::WeylGroup::get(d);
  std::vector<coxeter::WeylElement> out;
  switch (weyl.mode) {
    case WeylSelection::Mode::all:
      out = group->elements();
      break;
    case WeylSelection::Mode::full_support: {
      const auto delta = automorphism();
      for (const auto& w : group->elements())
        if (coxeter::has_full_twisted_support(w, delta)) out.push_back(w);
      break;
    }
    case WeylSelection::Mode::explicit_list: {
      std::set<std::size_t> chosen;
      for (const auto& word : weyl.words) chosen.insert(group->index_of(coxeter::WeylElement::parse(d, word)));
      for (auto i : chosen) out.push_back((*group)[i]);
      break;
    }
  }
  return out;
}

std::vector<Scenario> parse_scenarios(std::string_view ini_text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(ini_text)};
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  std::vector<Scenario> out;
  for (const auto& [id, section] : tree) {
    if (section.empty()) throw ParseError("config: key '" + id + "' outside any [scenario] section");
    out.push_back(scenario_from_section(id, section));
  }
  return out;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenarios(buffer.str());
}

std::vector<Scenario> presets() { return parse_scenarios(preset_ini()); }

PrimeValidity check_prime(const Scenario& s, std::uint32_t p) {
  if (!s.element) return {true, {}};
  const auto spec = s.spec(p);
  const auto h = s.element->instantiate(p);
  if (!h.is_invertible()) return {false, "element is singular mod " + std::to_string(p)};
  if (!spec.contains(h)) return {false, "element is not in " + spec.to_string()};
  if (!s.kind || spec.twist() != TwistKind::trivial) return {true, {}};
  const auto certificate = chevalley::is_regular(h, spec);
  if (certificate.kind != *s.kind)
    return {false, "certificate is " + chevalley::to_string(certificate.kind) + ", expected " +
                       chevalley::to_string(*s.kind) + " (" + certificate.evidence + ")"};
  if (s.factor_degrees && certificate.factor_degrees != *s.factor_degrees)
    return {false, "irreducible factor degrees are " + chevalley::degrees_to_string(certificate.factor_degrees) +
                       ", expected " + chevalley::degrees_to_string(*s.factor_degrees)};
  return {true, {}};
}

}  // namespace lvc::harness
