#include "forge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace forge {

namespace {

std::size_t env_cap() {
  const char* v = std::getenv("FORGE_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    const long n = std::stol(v);
    return n > 0 ? static_cast<std::size_t>(n) : 0;
  } catch (...) {
    return 0;
  }
}

}  // namespace

std::size_t resolve_threads(std::size_t requested) {
  const std::size_t cap = env_cap();
  std::size_t n = requested;
  if (n == 0) n = cap;
  if (n == 0) n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (cap != 0) n = std::min(n, cap);
  return std::max<std::size_t>(1, n);
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads <= 1) {
    if (n > 0) body(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t w = 0; w < threads; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace forge
