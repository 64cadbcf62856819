// Serial reference vs OpenMP kernels on fixed workloads. Prints one line per
// workload and exits 1 if the two paths ever disagree.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "lvc/chevalley.hpp"
#include "lvc/counting.hpp"
#include "lvc/kernels.hpp"

using namespace lvc;
using chevalley::ElementTemplate;
using chevalley::GroupFamily;
using chevalley::GroupSpec;
using kernels::Exec;
using matfq::MatrixFq;

namespace {

template <class F>
auto timed(F&& f, double& ms) {
  const auto start = std::chrono::steady_clock::now();
  auto out = f();
  ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool report(const std::string& name, std::size_t size, const std::function<bool(Exec, double&)>& run) {
  double serial_ms = 0;
  double parallel_ms = 0;
  const bool serial_ok = run(Exec::serial, serial_ms);
  const bool parallel_ok = run(Exec::parallel, parallel_ms);
  const bool ok = serial_ok && parallel_ok;
  std::printf("%-40s %12zu %10.1f %10.1f %8.2fx  %s\n", name.c_str(), size, serial_ms, parallel_ms,
              serial_ms / std::max(parallel_ms, 1e-3), ok ? "identical" : "MISMATCH");
  return ok;
}

// Bruhat cell of the matrix with base-p digits `code`; singular matrices go
// to the last bin.
std::size_t bruhat_bin(std::uint64_t code, int n, std::uint32_t p, std::size_t singular) {
  MatrixFq m(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
  if (!m.is_invertible()) return singular;
  return matfq::permutation_rank(matfq::bruhat_permutation(m), n);
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", kernels::max_threads());
  std::printf("%-40s %12s %10s %10s %9s\n", "workload", "size", "serial ms", "omp ms", "speedup");
  bool ok = true;

  for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{{2, 13}, {3, 5}}) {
    std::uint64_t total = 1;
    for (int i = 0; i < n * n; ++i) total *= p;
    std::size_t bins = 1;
    for (int i = 2; i <= n; ++i) bins *= static_cast<std::size_t>(i);
    std::vector<std::uint64_t> reference;
    ok &= report("Bruhat tally M" + std::to_string(n) + "(F" + std::to_string(p) + ")", total,
                 [&, n = n, p = p](Exec exec, double& ms) {
                   auto out = timed([&] { return kernels::tally(exec, total, bins + 1, [&](std::uint64_t i) { return bruhat_bin(i, n, p, bins); }); }, ms);
                   if (reference.empty()) reference = out;
                   return out == reference;
                 });
  }

  struct OrbitCase {
    GroupFamily family;
    int n;
    std::uint32_t p;
    std::string element;
  };
  for (const auto& c : std::vector<OrbitCase>{{GroupFamily::GL, 3, 7, "diag:1,2,3"},
                                              {GroupFamily::GL, 3, 11, "companion:1,1,-2,-1"},
                                              {GroupFamily::GL, 4, 3, "jordan:4:1"}}) {
    const GroupSpec spec(c.family, c.n, c.p);
    const auto h = ElementTemplate::parse(c.element).instantiate(c.p);
    std::vector<kernels::LinearMap> maps;
    for (const auto& g : spec.generators()) maps.push_back({g, g.inverse()});
    std::vector<matfq::MatrixKey> reference;
    const auto name = "orbit " + spec.to_string() + " " + c.element;
    const auto size = kernels::serial::orbit_closure(h, maps, 100'000'000).size();
    ok &= report(name, size, [&](Exec exec, double& ms) {
      auto out = timed([&] { return kernels::orbit_closure(exec, h, maps, 100'000'000); }, ms);
      if (reference.empty()) reference = out;
      return out == reference;
    });

    const auto orbit = chevalley::orbit(h, spec);
    counting::CellTally cells;
    ok &= report("class cells " + spec.to_string() + " " + c.element, size, [&](Exec exec, double& ms) {
      auto out = timed([&] { return counting::class_cell_counts(orbit, exec); }, ms);
      if (cells.empty()) cells = out;
      return out == cells;
    });
  }
  return ok ? 0 : 1;
}
