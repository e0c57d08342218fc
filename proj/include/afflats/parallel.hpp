#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace afflats {

// Worker count: hardware concurrency, capped by AFFLATS_THREADS when set.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AFFLATS_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    } catch (...) {
      // malformed values are ignored
    }
  }
  return hw;
}

// Splits [0, count) into contiguous blocks, runs body(block, begin, end) for
// each, and returns the number of blocks. Block b always covers the same
// range for a given worker count, so callers merge per-block results by
// index for deterministic output.
template <typename Body>
std::size_t parallel_blocks(std::size_t count, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, count / 256));
  if (workers <= 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return 1;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  threads.reserve(workers);
  for (std::size_t b = 0; b < workers; ++b) {
    const std::size_t begin = std::min(count, b * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&body, &errors, b, begin, end] {
      try {
        body(b, begin, end);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return workers;
}

}  // namespace afflats
