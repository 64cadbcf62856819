#include "lvc/kernels.hpp"

namespace lvc::kernels {

FlatKeySet::FlatKeySet(std::size_t expected) {
  std::size_t cap = 16;
  while (cap < 2 * expected) cap <<= 1;
  slots_.assign(cap, 0);
  mask_ = cap - 1;
}

bool FlatKeySet::insert(matfq::MatrixKey key) {
  if (2 * (size_ + 1) > slots_.size()) grow();
  std::size_t i = matfq::MatrixKeyHash{}(key) & mask_;
  while (slots_[i] != 0) {
    if (slots_[i] == key) return false;
    i = (i + 1) & mask_;
  }
  slots_[i] = key;
  ++size_;
  return true;
}

bool FlatKeySet::contains(matfq::MatrixKey key) const noexcept {
  std::size_t i = matfq::MatrixKeyHash{}(key) & mask_;
  while (slots_[i] != 0) {
    if (slots_[i] == key) return true;
    i = (i + 1) & mask_;
  }
  return false;
}

void FlatKeySet::collect(std::vector<matfq::MatrixKey>& out) const {
  for (auto k : slots_)
    if (k != 0) out.push_back(k);
}

void FlatKeySet::grow() {
  std::vector<matfq::MatrixKey> old = std::move(slots_);
  slots_.assign(old.size() * 2, 0);
  mask_ = slots_.size() - 1;
  size_ = 0;
  for (auto k : old)
    if (k != 0) insert(k);
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace lvc::kernels
