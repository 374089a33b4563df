#pragma once

#include <cstddef>
#include <exception>

namespace tpbvp::detail {

// OpenMP loop over [0, n). The first exception thrown by any iteration is
// rethrown on the calling thread after the loop finishes.
template <class Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(tpbvp_parallel_for_error)
      {
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace tpbvp::detail
