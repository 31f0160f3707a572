#pragma once

#include <exception>

namespace vortex {

// OpenMP loop wrappers that carry exceptions across the join instead of
// terminating. Each index writes only its own slots, so scheduling does not
// affect results.
template <typename F>
inline void parallel_indexed(int n, F&& body) {
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      {
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

template <typename F>
inline void parallel_indexed_dynamic(int n, F&& body) {
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      {
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

} // namespace vortex
