#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace besilab {

// Worker count from BESICOVITCH_LAB_THREADS, else hardware concurrency.
int worker_count();
// 0 restores the environment default.
void set_worker_count(int n);

// Runs fn(i) for every i in [0, n) on the worker pool. Work is handed out by index,
// so results written per index (and reduced by the caller in index order) do not
// depend on the worker count. If several indices throw, the lowest one is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace besilab
