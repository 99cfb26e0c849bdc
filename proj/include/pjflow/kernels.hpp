#pragma once

// Pointwise kernels behind the flow, isometry and norm computations. Each
// takes an execution policy; Exec::serial is the reference path the tests
// compare the OpenMP path against.

#include <span>

#include "pjflow/exec.hpp"
#include "pjflow/exponent.hpp"

namespace pjflow::kernels {

/// Per-slope quantities of the closed-form Lagrangian flow. For an initial
/// slope c at time t with base = 1 + t c / r:
///   jacobian           phi_x  = base^r              (e^{tc} for r = inf)
///   jacobian_remainder phi_x - 1 - t c
///   rate               phi_tx = c base^{r-1}        (c e^{tc})
///   rate_remainder     phi_tx - c
///   eulerian_slope     u_x    = c / base            (c)
/// Callers guarantee base > 0.
enum class FlowQuantity { jacobian, jacobian_remainder, rate, rate_remainder, eulerian_slope };

double flow_value(FlowQuantity q, double c, double t, const Exponent& r);

void flow_map(FlowQuantity q, std::span<const double> slopes, double t, const Exponent& r,
              std::span<double> out, Exec exec);

/// Line isometry r (phi_x^{1/r} - 1).
void isometry_line(std::span<const double> phi_x, double r, std::span<double> out, Exec exec);

/// Circle isometry r phi_x^{1/r}.
void isometry_circle(std::span<const double> phi_x, double r, std::span<double> out, Exec exec);

/// (f/r + 1)^r - 1, the integrand of the line isometry's inverse.
void isometry_line_inverse(std::span<const double> f, double r, std::span<double> out, Exec exec);

/// phi_x^{1-r} |h_x|^r, the Finsler integrand (composition-free form).
void finsler_integrand(std::span<const double> phi_x, std::span<const double> h_x, double r,
                       std::span<double> out, Exec exec);

/// Pointwise part of the nonlocal right-hand side: -u u_x + coeff * nonlocal.
void nonlocal_rhs(std::span<const double> u, std::span<const double> u_x,
                  std::span<const double> nonlocal, double coeff, std::span<double> out, Exec exec);

/// out = u_x^2.
void square(std::span<const double> u_x, std::span<double> out, Exec exec);

}  // namespace pjflow::kernels
