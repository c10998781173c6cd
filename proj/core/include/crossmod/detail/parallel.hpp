#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "crossmod/rational.hpp"

namespace crossmod::detail {

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(0) .. fn(chunks - 1) on up to `jobs` threads and sums the
/// results in chunk order. If any chunk throws, the exception from the lowest
/// failing chunk is rethrown, so the outcome does not depend on scheduling.
template <class Fn>
BigInt parallel_sum(std::size_t chunks, unsigned jobs, Fn&& fn) {
  std::vector<BigInt> partial(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      try {
        partial[c] = fn(c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };

  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(resolve_jobs(jobs), chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BigInt total = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (errors[c]) std::rethrow_exception(errors[c]);
    total += partial[c];
  }
  return total;
}

}  // namespace crossmod::detail
