#include "ellgas/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ellgas {

namespace {
std::atomic<int> g_thread_override{0};
}

int max_threads() {
  if (const char* env = std::getenv("ELLIPTIC_GAS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const int o = g_thread_override.load();
  if (o > 0) return o;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_max_threads(int count) { g_thread_override.store(count); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const int workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, max_threads())), n);
  if (workers == 1) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int k = 0; k < workers; ++k) {
    const std::size_t b = std::min(n, static_cast<std::size_t>(k) * chunk);
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ellgas
