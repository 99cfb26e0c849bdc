#pragma once

#include <cstddef>
#include <vector>

#include "pjflow/grid.hpp"

namespace pjflow {

/// Continuous piecewise-linear function given by breakpoints and node values.
///
/// On the line it is affine between consecutive breakpoints and extends
/// affinely into both tails with the stored tail slopes. On the circle the
/// breakpoints lie in [0,1) and the last segment wraps to the first
/// breakpoint plus one. Interior breakpoints whose neighbouring segments have
/// the same slope are dropped on construction, so two functions are equal
/// exactly when their breakpoint and node arrays are.
class PiecewiseLinearFn {
public:
    static PiecewiseLinearFn line(std::vector<double> breakpoints, std::vector<double> node_values,
                                  double left_tail_slope = 0.0, double right_tail_slope = 0.0);
    static PiecewiseLinearFn circle(std::vector<double> breakpoints, std::vector<double> node_values);

    bool periodic() const noexcept { return periodic_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<double>& node_values() const noexcept { return node_values_; }
    double left_tail_slope() const noexcept { return left_tail_slope_; }
    double right_tail_slope() const noexcept { return right_tail_slope_; }

    std::size_t segment_count() const;
    /// Slope on segment i (between breakpoints i and i+1, wrapping on the circle).
    double slope(std::size_t i) const;
    std::vector<double> slopes() const;
    double segment_length(std::size_t i) const;

    double operator()(double x) const;

    bool operator==(const PiecewiseLinearFn&) const = default;

private:
    PiecewiseLinearFn() = default;
    void canonicalize();

    bool periodic_ = false;
    std::vector<double> breakpoints_;
    std::vector<double> node_values_;
    double left_tail_slope_ = 0.0;
    double right_tail_slope_ = 0.0;
};

/// Exact sampling of p on the uniform grid of `domain`.
GridFunction pl_to_grid(const PiecewiseLinearFn& p, const Domain& domain, std::size_t n);

}  // namespace pjflow
