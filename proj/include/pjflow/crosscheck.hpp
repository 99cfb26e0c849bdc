#pragma once

#include <string>
#include <vector>

#include "pjflow/exponent.hpp"
#include "pjflow/grid.hpp"

namespace pjflow {

enum class SpatialScheme { central, upwind };

struct IntegratorConfig {
    double dt = 1e-3;
    SpatialScheme spatial = SpatialScheme::central;
    double cfl = 0.4;
    /// Keep every save_every-th step (the final step is always kept).
    std::size_t save_every = 0;
};

struct NonlocalSolution {
    std::vector<double> times;
    std::vector<GridFunction> velocities;
    bool stopped_early = false;
    std::string stop_reason;
    std::size_t steps = 0;
};

/// Method-of-lines RK4 for u_t = -u u_x + (1 - 1/r) int_a^x u_x^2 (coefficient
/// 1 at r = inf). The integral uses the cumulative trapezoid rule.
NonlocalSolution integrate_nonlocal(const GridFunction& u0, const Exponent& r, double t_end,
                                    const IntegratorConfig& cfg = {});

/// Inviscid Burgers by characteristics: u(t, x + t u0(x)) = u0(x), resampled
/// onto the window grid.
GridFunction burgers_characteristics(const GridFunction& u0, double t);

}  // namespace pjflow
