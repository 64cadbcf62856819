#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvc/chevalley.hpp"
#include "lvc/counting.hpp"
#include "lvc/hecke.hpp"

namespace lvc::harness {

using chevalley::ElementTemplate;
using chevalley::GroupFamily;
using chevalley::GroupSpec;
using chevalley::RegularKind;
using matfq::TwistKind;

inline constexpr std::string_view kVersion = "0.3.0";

/// Names accepted by `verify_suite`, in execution order.
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

struct WeylSelection {
  enum class Mode { all, full_support, explicit_list };
  Mode mode = Mode::all;
  /// Reduced words such as "1,2,1"; "" or "e" is the identity.
  std::vector<std::string> words;

  /// "all", "full-support" or "explicit:1,2|2,1|e".
  static WeylSelection parse(std::string_view text);
  std::string to_string() const;
};

struct Caps {
  std::uint64_t orbit = chevalley::kDefaultOrbitCap;
  std::uint64_t flag = chevalley::kDefaultFlagCap;
  std::uint64_t unipotent = chevalley::kDefaultUnipotentCap;
  std::uint64_t centralizer = chevalley::kDefaultCentralizerCap;
};

/// A group template with its prime lists, or a bare Coxeter type for the
/// symbolic suites.
struct Scenario {
  std::string id;
  std::optional<GroupFamily> family;
  int n = 0;
  /// Coxeter type of the symbolic suites; A_{n-1} when a family is given.
  std::optional<coxeter::CoxeterDatum> type;
  TwistKind twist = TwistKind::trivial;
  /// Counting primes. Empty means "pick the first bound + 3 valid primes".
  std::vector<std::uint32_t> primes;
  /// Primes for orbit-based checks. Empty means `primes`.
  std::vector<std::uint32_t> orbit_primes;
  std::optional<ElementTemplate> element;
  /// Expected certificate of the element at every valid prime.
  std::optional<RegularKind> kind;
  /// Degree of each distinct irreducible factor of the characteristic
  /// polynomial, required for nonsplit kinds so the family is uniform in p.
  std::optional<std::vector<int>> factor_degrees;
  WeylSelection weyl;
  std::vector<std::string> suites;
  Caps caps;
  std::uint64_t seed = 1;
  std::uint32_t samples = 1000;

  bool has_group() const noexcept { return family.has_value(); }
  coxeter::CoxeterDatum datum() const;
  coxeter::DiagramAutomorphism automorphism() const;
  /// Spec at p; requires a family.
  GroupSpec spec(std::uint32_t p) const;

  /// Throws Error on unknown suites, empty prime lists, missing keys or an
  /// empty Weyl selection.
  void validate() const;
  /// The selected elements of W, in enumeration order.
  std::vector<coxeter::WeylElement> selected() const;
};

/// One [section] per scenario of key = value pairs.
std::vector<Scenario> parse_scenarios(std::string_view ini_text);
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);
/// The shipped presets (also in configs/presets.ini).
const std::string& preset_ini();
std::vector<Scenario> presets();

struct PrimeValidity {
  bool valid = false;
  std::string reason;
};

/// Invertible, inside the group and with the expected certificate.
PrimeValidity check_prime(const Scenario& s, std::uint32_t p);

enum class Status { pass, fail, skipped, info };

std::string to_string(Status status);
Status parse_status(std::string_view text);

struct ReportRow {
  std::string scenario;
  std::string check;
  /// Property the row checks.
  std::string anchor;
  Status status = Status::info;
  /// Exact integers (or polynomials) needed to redo the check by hand.
  std::map<std::string, std::string> witness;
  std::string detail;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Summary {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t skipped = 0;
  std::uint64_t info = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct VerificationReport {
  std::string version{kVersion};
  std::vector<ReportRow> rows;
  std::map<std::string, std::uint64_t> seeds;
  bool cap_exceeded = false;
  std::uint64_t wall_time_ms = 0;

  Summary summary() const;
  /// 0 iff no row failed and no cap was exceeded.
  int exit_code() const;
  void append(const VerificationReport& other);

  /// Everything but the wall time.
  bool same_content(const VerificationReport& other) const;
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

enum class Format { json, csv, text };

Format parse_format(std::string_view text);
std::string emit_report(const VerificationReport& report, Format format);
/// Inverse of the JSON emitter.
VerificationReport load_report(std::string_view json_text);

struct RunOptions {
  /// nullptr bypasses the structure-constant cache.
  hecke::KawanakaCache* cache = &hecke::default_cache();
  kernels::Exec exec = kernels::Exec::parallel;
};

std::vector<ReportRow> verify_suite(std::string_view name, const Scenario& s, const RunOptions& options = {});

/// Every suite of the scenario, with the prime-validity log first.
VerificationReport run_scenario(const Scenario& s, const RunOptions& options = {});
VerificationReport run_scenarios(const std::vector<Scenario>& scenarios, const RunOptions& options = {});

/// Primes the element suites use: the configured list filtered by
/// `check_prime`, or the first (largest fit bound + 3) valid primes when none
/// is configured.
std::vector<std::uint32_t> counting_primes(const Scenario& s);

/// One line of a count table.
struct CountRecord {
  std::string scenario;
  std::string quantity;
  std::string w;
  /// Empty unless the quantity is indexed by a second Weyl element.
  std::string w_prime;
  std::uint32_t prime = 0;
  BigInt count;
};

/// Quantities: "unipotent-cell" (all w, w'), "lusztig" (per rational orbit of
/// the geometric class, as "lusztig-orbit-<i>"), "class-cell" (base orbit, at
/// the orbit primes) and "geometric-class-cell". Throws CapExceeded.
std::vector<CountRecord> count_table(const Scenario& s, std::string_view quantity, const RunOptions& options = {});
/// Header `scenario,quantity,w,w',prime,count`.
std::string count_table_csv(const std::vector<CountRecord>& records);

/// Series of `records` grouped by (quantity, w, w').
std::vector<counting::PointCountSeries> group_series(const std::vector<CountRecord>& records,
                                                     std::vector<std::pair<std::string, std::string>>* labels = nullptr);

/// JSON array with one fit record per series; coefficients are
/// {"numerator", "denominator"} strings, low degree first. A negative bound
/// uses every point but one.
std::string fit_table_json(const std::vector<CountRecord>& records, int degree_bound = -1);

/// A skipped row produced by an exceeded work cap.
bool exceeded_cap(const ReportRow& row);

}  // namespace lvc::harness
