#pragma once

#include <exception>

namespace gqe::detail {

// OpenMP loop wrapper that carries the first exception out of the parallel
// region instead of terminating.
template <class F>
void parallel_for(int n, F&& body) {
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace gqe::detail
