#pragma once

#include "pjflow/exponent.hpp"
#include "pjflow/piecewise_linear.hpp"

namespace pjflow {

/// Piecewise-linear initial velocity on the line: zero left tail, zero value
/// at the first breakpoint and zero right tail slope (so u0' is integrable).
class PLState {
public:
    PLState(PiecewiseLinearFn velocity0, Exponent exponent);

    const PiecewiseLinearFn& velocity0() const noexcept { return velocity0_; }
    const Exponent& exponent() const noexcept { return exponent_; }
    double blowup_time() const noexcept { return blowup_time_; }

private:
    PiecewiseLinearFn velocity0_;
    Exponent exponent_;
    double blowup_time_;
};

/// The flow map at time t. Breakpoints are the Lagrangian ones, slopes are
/// (1 + t c_i / r)^r (e^{t c_i} at r = inf), both tails have slope 1.
PiecewiseLinearFn pl_exact_flow(const PLState& state, double t);

/// u(t) = phi_t o phi^{-1}: breakpoints phi(t, b_i), slopes c_i / (1 + t c_i / r).
PiecewiseLinearFn pl_eulerian_velocity(const PLState& state, double t);

/// sum |slope_i|^r * length_i over the segments (max |slope_i| at r = inf).
double pl_slope_energy(const PiecewiseLinearFn& u, const Exponent& r);

}  // namespace pjflow
