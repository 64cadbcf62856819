#include <algorithm>
#include <array>
#include <atomic>

#include "lvc/error.hpp"
#include "lvc/kernels.hpp"

namespace lvc::kernels::omp {

namespace {

constexpr std::size_t kShards = 64;

struct ShardedSet {
  std::array<FlatKeySet, kShards> sets;
  std::array<std::mutex, kShards> locks;

  bool insert(matfq::MatrixKey key) {
    // High bits pick the shard so the in-shard probe uses independent bits.
    const std::size_t shard = (matfq::MatrixKeyHash{}(key) >> 58) % kShards;
    std::lock_guard guard(locks[shard]);
    return sets[shard].insert(key);
  }
};

}  // namespace

std::vector<matfq::MatrixKey> orbit_closure(const matfq::MatrixFq& start,
                                            const std::vector<LinearMap>& maps, std::uint64_t cap) {
  const int n = start.n();
  const auto p = start.p();
  ShardedSet seen;
  std::vector<matfq::MatrixKey> all{start.key()};
  std::vector<matfq::MatrixKey> frontier{start.key()};
  seen.insert(start.key());
  std::atomic<std::uint64_t> total{1};

  while (!frontier.empty()) {
    std::vector<matfq::MatrixKey> next;
    const auto count = static_cast<long long>(frontier.size());
#pragma omp parallel
    {
      std::vector<matfq::MatrixKey> local;
#pragma omp for schedule(dynamic, 256)
      for (long long i = 0; i < count; ++i) {
        if (total.load(std::memory_order_relaxed) > cap) continue;
        const auto x = matfq::MatrixFq::from_key(frontier[static_cast<std::size_t>(i)], n, p);
        for (const auto& m : maps) {
          const auto key = (m.left * x * m.right).key();
          if (seen.insert(key)) {
            local.push_back(key);
            total.fetch_add(1, std::memory_order_relaxed);
          }
        }
      }
#pragma omp critical(lvc_orbit_merge)
      next.insert(next.end(), local.begin(), local.end());
    }
    if (total.load() > cap) throw CapExceeded("orbit enumeration", total.load(), cap);
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace lvc::kernels::omp
