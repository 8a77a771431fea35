#ifndef PLANARLAB_PARALLEL_HPP
#define PLANARLAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace planarlab {

// Runs body(i) for every i in [0, n) on up to `workers` threads. Work is
// handed out by an atomic counter; callers write results into slot i so the
// outcome never depends on scheduling. The first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Uniform draw in [0, bound) from raw mt19937_64 output by rejection, so the
// stream is identical on every standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do v = rng(); while (v >= limit);
  return v % bound;
}

// `count` distinct values from [1, q) chosen with a seeded generator, sorted
// ascending. Returns every value when count >= q - 1.
inline std::vector<std::uint32_t> sample_nonzero(std::uint32_t q, std::size_t count, std::uint64_t seed) {
  std::vector<std::uint32_t> out;
  if (count >= q - 1) {
    for (std::uint32_t v = 1; v < q; ++v) out.push_back(v);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::vector<bool> taken(q, false);
  while (out.size() < count) {
    const auto v = static_cast<std::uint32_t>(1 + uniform_below(rng, q - 1));
    if (taken[v]) continue;
    taken[v] = true;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace planarlab

#endif  // PLANARLAB_PARALLEL_HPP
