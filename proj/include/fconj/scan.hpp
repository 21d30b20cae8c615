#ifndef FCONJ_SCAN_HPP
#define FCONJ_SCAN_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fconj/setcore.hpp"

namespace fconj {

struct ScanOptions {
  unsigned threads = 1;
};

// Prefix length used to split the F-curve stream into independent chunks.
inline int scan_prefix_length(int n) { return std::min(n, 7); }

// Deterministic map-reduce over all F-curves on n markings.
//
// The stream is cut into RGS-prefix chunks. Each chunk is folded with
// `visit(Partial&, const FCurve&)` into its own Partial (built by `init()`),
// then the chunk results are merged left to right in enumeration order with
// `merge(Partial& into, const Partial& next)`. The result is therefore the
// same for every thread count as long as merge is associative.
template <class Partial, class Init, class Visit, class Merge>
Partial scan_fcurves(int n, const ScanOptions& options, Init init, Visit visit, Merge merge) {
  const auto prefixes = fcurve_prefixes(n, scan_prefix_length(n));
  std::vector<Partial> partials;
  partials.reserve(prefixes.size());
  for (std::size_t i = 0; i < prefixes.size(); ++i) partials.push_back(init());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < prefixes.size(); i = next++) {
        Partial& p = partials[i];
        for_each_fcurve(n, prefixes[i], [&](const FCurve& c) { visit(p, c); });
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = prefixes.size();
    }
  };

  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Partial result = init();
  for (const Partial& p : partials) merge(result, p);
  return result;
}

}  // namespace fconj

#endif  // FCONJ_SCAN_HPP
