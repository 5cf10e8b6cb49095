#include "gridmrf/threads.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gridmrf {

namespace {
std::atomic<int> g_threads{0};

int env_threads() {
  if (const char* s = std::getenv("GRIDMRF_THREADS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}
}  // namespace

int default_threads() {
  int n = g_threads.load();
  return n > 0 ? n : env_threads();
}

void set_default_threads(int n) { g_threads.store(n); }

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (workers <= 0) workers = default_threads();
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gridmrf
