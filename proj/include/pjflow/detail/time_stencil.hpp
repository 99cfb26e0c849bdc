#pragma once

#include <cstddef>
#include <span>

#include "pjflow/errors.hpp"

namespace pjflow::detail {

// Three-point weights on a possibly non-uniform time grid.
struct Stencil3 {
    double wm, w0, wp;
};

// First derivative at sample k (centered in the interior, one-sided second
// order at the ends; two-point when only two samples exist).
inline Stencil3 first_derivative_weights(std::span<const double> t, std::size_t k) {
    const std::size_t n = t.size();
    if (n < 2) throw Error(ErrorKind::insufficient_data, "time differences need at least two samples");
    if (n == 2) {
        const double d = t[1] - t[0];
        return {-1.0 / d, 1.0 / d, 0.0};  // weights for samples 0, 1 (third unused)
    }
    if (k == 0) {
        const double h1 = t[1] - t[0], h2 = t[2] - t[1];
        return {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2), -h1 / (h2 * (h1 + h2))};
    }
    if (k + 1 == n) {
        const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
        return {h2 / (h1 * (h1 + h2)), -(h1 + h2) / (h1 * h2), (2.0 * h2 + h1) / (h2 * (h1 + h2))};
    }
    const double h1 = t[k] - t[k - 1], h2 = t[k + 1] - t[k];
    return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

// Index of the first sample the weights of first_derivative_weights apply to.
inline std::size_t stencil_start(std::size_t n, std::size_t k) {
    if (n == 2 || k == 0) return 0;
    if (k + 1 == n) return n - 3;
    return k - 1;
}

// Second derivative at interior sample k.
inline Stencil3 second_derivative_weights(std::span<const double> t, std::size_t k) {
    const double h1 = t[k] - t[k - 1], h2 = t[k + 1] - t[k];
    const double s = 2.0 / (h1 * h2 * (h1 + h2));
    return {s * h2, -s * (h1 + h2), s * h1};
}

}  // namespace pjflow::detail
