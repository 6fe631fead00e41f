#ifndef STOCHFV_PARALLEL_HPP
#define STOCHFV_PARALLEL_HPP

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace stochfv {

/// Run fn(begin, end) over a deterministic partition of [0, n) into
/// contiguous chunks, one per thread.  Writers must touch disjoint ranges;
/// results are bitwise identical to the sequential loop order.
inline void parallel_for(int n, int threads,
                         const std::function<void(int, int)>& fn) {
  if (threads <= 1 || n < 2 * threads) {
    fn(0, n);
    return;
  }
  const int chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    const int b = t * chunk;
    const int e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, t, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace stochfv

#endif
