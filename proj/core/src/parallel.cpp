#include "specmap/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>

namespace specmap {

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SPECMAP_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) return std::min(requested, hw);
  }
  return hw;
}

namespace detail {

void parallel_for_impl(int begin, int end,
                       const std::function<void(int)>& body) {
  const int total = end - begin;
  if (total <= 0) return;

  const int workers = std::min(thread_budget(), total);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<int> next{begin};

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= end) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace specmap
