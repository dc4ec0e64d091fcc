#include "eqlines/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace eqlines {

std::size_t worker_count() {
  if (const char* env = std::getenv("EQLINES_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::size_t workers_for(std::size_t n) { return std::max<std::size_t>(1, std::min(worker_count(), n)); }

void parallel_indices(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = workers_for(n);
  const auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) body(w, i);
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
  for (auto& t : threads) t.join();
}

}  // namespace eqlines
