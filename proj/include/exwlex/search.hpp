#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace exwlex {

struct SearchOptions {
  std::uint64_t cone_budget = 1'000'000;      // candidate cones per enumeration
  std::uint64_t search_budget = 500'000'000;  // elementary search steps per context
  unsigned workers = 1;
};

/// Counts search steps against a budget. Exceeding it throws BudgetExceeded;
/// a verdict is never produced from a truncated search.
class SearchMeter {
 public:
  explicit SearchMeter(std::uint64_t budget) : budget_(budget) {}
  SearchMeter(const SearchMeter&) = delete;
  SearchMeter& operator=(const SearchMeter&) = delete;

  void charge(std::uint64_t n = 1);
  std::uint64_t used() const noexcept { return used_.load(std::memory_order_relaxed); }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> used_{0};
};

/// Smallest index i in [0, n) with !ok(i), or n if every index passes.
/// Indices are claimed in increasing order; any index above the current
/// best failure is skipped, so the answer does not depend on `workers`.
/// An exception thrown by ok(i) counts as a failure at i and is rethrown
/// if i turns out to be the minimum.
template <class Pred>
std::size_t first_failure(std::size_t n, unsigned workers, Pred&& ok) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      if (!ok(i)) return i;
    return n;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{n};
  std::mutex mu;
  std::size_t error_index = n;
  std::exception_ptr error;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || i >= best.load()) return;
      bool passed = false;
      try {
        passed = ok(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
      if (!passed) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<std::size_t>(workers, n);
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  std::size_t result = best.load();
  if (error && error_index == result) std::rethrow_exception(error);
  return result;
}

/// Runs body(i) for every i in [0, n). Results must be written to
/// per-index slots by the caller. The first exception (by index) is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  first_failure(n, workers, [&](std::size_t i) {
    body(i);
    return true;
  });
}

}  // namespace exwlex
