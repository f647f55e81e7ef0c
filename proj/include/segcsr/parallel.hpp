#pragma once

#include <omp.h>

#include <chrono>
#include <cstddef>

namespace segcsr {

inline int worker_count() { return omp_get_max_threads(); }

/// Caps the fork-join pool used by every parallel loop in the library.
inline void set_worker_count(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

inline int current_worker() { return omp_get_thread_num(); }

/// Dynamically scheduled loop over task indices. Idle workers grab the next
/// task, so uneven tasks balance out. `body` must not throw.
template <class Body>
void parallel_for_tasks(std::size_t count, Body&& body) {
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

/// Statically scheduled loop for uniform per-element work.
template <class Body>
void parallel_for_static(std::size_t count, Body&& body) {
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}

  void restart() { start_ = Clock::now(); }

  double millis() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
};

}  // namespace segcsr
