#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp` with the same
// signature and bit-identical results; tests and bench_kernels compare them.

#include <cstdint>
#include <mutex>
#include <utility>
#include <vector>

#include "lvc/matfq.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lvc::kernels {

enum class Exec { serial, parallel };

/// Open-addressing set of matrix keys. Key 0 (the zero matrix) is the empty
/// marker, which is safe because only invertible matrices are stored.
class FlatKeySet {
 public:
  explicit FlatKeySet(std::size_t expected = 16);

  /// True when the key was not present before.
  bool insert(matfq::MatrixKey key);
  bool contains(matfq::MatrixKey key) const noexcept;
  std::size_t size() const noexcept { return size_; }
  /// Appends every stored key to `out` (unordered).
  void collect(std::vector<matfq::MatrixKey>& out) const;

 private:
  void grow();
  std::vector<matfq::MatrixKey> slots_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
};

/// An action x -> left * x * right.
struct LinearMap {
  matfq::MatrixFq left;
  matfq::MatrixFq right;
};

namespace serial {

/// bins[cell_of(i)] += 1 for i in [0, count).
template <class CellOf>
std::vector<std::uint64_t> tally(std::uint64_t count, std::size_t bins, CellOf&& cell_of) {
  std::vector<std::uint64_t> out(bins, 0);
  for (std::uint64_t i = 0; i < count; ++i) ++out[cell_of(i)];
  return out;
}

/// Closure of `start` under the maps; sorted keys. Throws CapExceeded.
std::vector<matfq::MatrixKey> orbit_closure(const matfq::MatrixFq& start,
                                            const std::vector<LinearMap>& maps, std::uint64_t cap);

}  // namespace serial

namespace omp {

template <class CellOf>
std::vector<std::uint64_t> tally(std::uint64_t count, std::size_t bins, CellOf&& cell_of) {
  std::vector<std::uint64_t> out(bins, 0);
  const auto n = static_cast<long long>(count);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) ++local[cell_of(static_cast<std::uint64_t>(i))];
#pragma omp critical(lvc_tally_merge)
    for (std::size_t b = 0; b < bins; ++b) out[b] += local[b];
  }
  return out;
}

std::vector<matfq::MatrixKey> orbit_closure(const matfq::MatrixFq& start,
                                            const std::vector<LinearMap>& maps, std::uint64_t cap);

}  // namespace omp

template <class CellOf>
std::vector<std::uint64_t> tally(Exec exec, std::uint64_t count, std::size_t bins, CellOf&& cell_of) {
  if (exec == Exec::serial) return serial::tally(count, bins, std::forward<CellOf>(cell_of));
  return omp::tally(count, bins, std::forward<CellOf>(cell_of));
}

inline std::vector<matfq::MatrixKey> orbit_closure(Exec exec, const matfq::MatrixFq& start,
                                                   const std::vector<LinearMap>& maps,
                                                   std::uint64_t cap) {
  return exec == Exec::serial ? serial::orbit_closure(start, maps, cap)
                              : omp::orbit_closure(start, maps, cap);
}

/// Sets the OpenMP thread count (no-op without OpenMP).
void set_threads(int threads);
int max_threads();

}  // namespace lvc::kernels
