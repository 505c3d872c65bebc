#pragma once
// Worker count and an order-preserving parallel map.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace modrep2 {

inline std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> n{0};
  return n;
}

/// Explicit setting, else MODREP2_THREADS, else 1.
inline unsigned worker_count() {
  if (unsigned n = thread_setting().load()) return n;
  if (const char* env = std::getenv("MODREP2_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

inline void set_worker_count(unsigned n) { thread_setting().store(n); }

/// out[i] = f(i); results keep input order whatever the worker count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
  std::vector<T> out(n);
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace modrep2
