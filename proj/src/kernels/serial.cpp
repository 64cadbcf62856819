#include <algorithm>

#include "lvc/error.hpp"
#include "lvc/kernels.hpp"

namespace lvc::kernels::serial {

std::vector<matfq::MatrixKey> orbit_closure(const matfq::MatrixFq& start,
                                            const std::vector<LinearMap>& maps, std::uint64_t cap) {
  const int n = start.n();
  const auto p = start.p();
  FlatKeySet seen;
  std::vector<matfq::MatrixKey> queue{start.key()};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = matfq::MatrixFq::from_key(queue[head], n, p);
    for (const auto& m : maps) {
      const auto key = (m.left * x * m.right).key();
      if (seen.insert(key)) {
        queue.push_back(key);
        if (queue.size() > cap) throw CapExceeded("orbit enumeration", queue.size(), cap);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

}  // namespace lvc::kernels::serial
