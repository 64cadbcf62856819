#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lvc/error.hpp"
#include "lvc/harness.hpp"

namespace {

using namespace lvc;
using namespace lvc::harness;

struct Globals {
  std::string config;
  std::string primes;
  std::uint64_t cap = 0;
  int jobs = 0;
  std::string cache_dir;
  std::string format = "text";
};

std::vector<std::uint32_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    const auto p = static_cast<std::uint32_t>(std::stoul(piece));
    if (!matfq::is_prime(p)) throw ParseError(piece + " is not prime");
    out.push_back(p);
  }
  return out;
}

std::vector<Scenario> scenarios(const Globals& g, const std::vector<std::string>& ids) {
  auto all = g.config.empty() ? presets() : load_scenarios(g.config);
  std::vector<Scenario> out;
  if (ids.empty()) {
    out = std::move(all);
  } else {
    for (const auto& id : ids) {
      auto it = std::find_if(all.begin(), all.end(), [&](const Scenario& s) { return s.id == id; });
      if (it == all.end()) throw Error("no scenario named '" + id + "'");
      out.push_back(*it);
    }
  }
  for (auto& s : out) {
    if (!g.primes.empty()) {
      s.primes = parse_prime_list(g.primes);
      s.orbit_primes.clear();
    }
    if (g.cap > 0) s.caps = {g.cap, g.cap, g.cap, g.cap};
  }
  return out;
}

const Scenario& single(const std::vector<Scenario>& list) {
  if (list.size() != 1) throw Error("exactly one --scenario is required");
  return list.front();
}

int emit(const VerificationReport& report, const Globals& g) {
  std::cout << emit_report(report, parse_format(g.format));
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts of twisted Bruhat-cell intersections over prime fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Scenario file (default: shipped presets)");
  app.add_option("--primes", g.primes, "Comma-separated primes overriding every scenario's prime lists");
  app.add_option("--cap", g.cap, "Work cap applied to every sweep");
  app.add_option("--jobs", g.jobs, "Worker threads for the parallel kernels");
  app.add_option("--cache-dir", g.cache_dir, "Directory for cached structure constants (else $LVC_CACHE_DIR)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));

  std::string type = "A2";
  std::string twist = "id";
  auto* table = app.add_subcommand("hecke-table", "Twisted structure constants of a Coxeter type as CSV");
  table->add_option("--type", type, "Coxeter type, e.g. A2 or B2");
  table->add_option("--twist", twist, "id, flip or perm:...");

  std::vector<std::string> ids;
  std::string quantity = "unipotent-cell";
  int degree_bound = -1;
  auto* count = app.add_subcommand("count", "Count table as CSV");
  count->add_option("--scenario", ids, "Scenario id");
  count->add_option("--quantity", quantity, "unipotent-cell, lusztig, class-cell or geometric-class-cell");

  auto* fit = app.add_subcommand("fit", "Exact polynomial fits of a count table as JSON");
  fit->add_option("--scenario", ids, "Scenario id");
  fit->add_option("--quantity", quantity, "unipotent-cell, lusztig, class-cell or geometric-class-cell");
  fit->add_option("--degree-bound", degree_bound, "Degree bound (default: all points but one)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run one suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--scenario", ids, "Scenario ids (default: every scenario listing the suite)");

  std::string input;
  auto* report = app.add_subcommand("report", "Run every configured suite, or re-emit a saved JSON report");
  report->add_option("--scenario", ids, "Scenario ids (default: all)");
  report->add_option("--input", input, "Saved JSON report to re-emit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  try {
    if (g.jobs > 0) kernels::set_threads(g.jobs);
    if (!g.cache_dir.empty()) hecke::default_cache().set_directory(std::filesystem::path(g.cache_dir));

    if (*table) {
      const auto datum = coxeter::CoxeterDatum::parse(type);
      std::cout << hecke::hecke_table_csv(datum, coxeter::DiagramAutomorphism::parse(datum, twist));
      return 0;
    }
    if (*count) {
      std::cout << count_table_csv(count_table(single(scenarios(g, ids)), quantity));
      return 0;
    }
    if (*fit) {
      std::cout << fit_table_json(count_table(single(scenarios(g, ids)), quantity), degree_bound);
      return 0;
    }
    if (*verify) {
      std::vector<Scenario> chosen;
      for (auto s : scenarios(g, ids)) {
        const bool listed = std::find(s.suites.begin(), s.suites.end(), suite) != s.suites.end();
        if (!ids.empty() || listed) {
          s.suites = {suite};
          chosen.push_back(std::move(s));
        }
      }
      if (chosen.empty()) throw Error("no scenario runs suite '" + suite + "'");
      return emit(run_scenarios(chosen), g);
    }
    if (*report) {
      if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw Error("cannot open " + input);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return emit(load_report(buffer.str()), g);
      }
      return emit(run_scenarios(scenarios(g, ids)), g);
    }
  } catch (const std::exception& e) {
    std::cerr << "lvc: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
