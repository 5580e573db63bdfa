#pragma once

#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace pcr3bp {

/// Worker count for data-parallel sweeps: PCR3BP_WORKERS if set,
/// otherwise the hardware concurrency.
inline int default_worker_count() {
  if (const char* env = std::getenv("PCR3BP_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

struct MinScanResult {
  double min = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  std::size_t evaluated = 0;  // cells that produced a finite value
};

/// Minimum of f over cell indices [0, n). Cells may opt out by returning
/// +infinity. The reduction is min by value with ties broken by the
/// smaller cell index, so the result does not depend on the worker count.
inline MinScanResult parallel_min_scan(std::size_t n, int workers,
                                       const std::function<double(std::size_t)>& f) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(n, 1))));
  std::vector<MinScanResult> local(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        MinScanResult r;
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
          const double v = f(i);
          if (v == std::numeric_limits<double>::infinity()) continue;
          ++r.evaluated;
          if (v < r.min || (v == r.min && i < r.argmin)) {
            r.min = v;
            r.argmin = i;
          }
        }
        local[w] = r;
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  MinScanResult out;
  for (const auto& r : local) {
    out.evaluated += r.evaluated;
    if (r.min < out.min || (r.min == out.min && r.argmin < out.argmin)) {
      out.min = r.min;
      out.argmin = r.argmin;
    }
  }
  return out;
}

}  // namespace pcr3bp
