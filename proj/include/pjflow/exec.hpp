#pragma once

#include <cstddef>

namespace pjflow {

/// Execution policy for the pointwise kernels. Both paths produce bitwise
/// identical results: kernels are elementwise maps and every reduction is
/// summed serially afterwards, so thread count never changes the output.
enum class Exec { serial, parallel };

template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
    const auto count = static_cast<std::ptrdiff_t>(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    }
}

// Caps OpenMP parallelism (the CLI wires PJFLOW_THREADS to this).
void set_thread_limit(int threads);
int thread_limit();

}  // namespace pjflow
