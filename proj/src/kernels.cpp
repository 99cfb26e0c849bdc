#include "pjflow/kernels.hpp"

#include <cmath>
#include <sstream>

namespace pjflow {

std::string format_exponent(const Exponent& e) {
    if (e.is_infinite()) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << e.r();
    return os.str();
}

}  // namespace pjflow

namespace pjflow::kernels {

double flow_value(FlowQuantity q, double c, double t, const Exponent& r) {
    const double tc = t * c;
    if (r.is_infinite()) {
        switch (q) {
            case FlowQuantity::jacobian: return std::exp(tc);
            case FlowQuantity::jacobian_remainder: return std::expm1(tc) - tc;
            case FlowQuantity::rate: return c * std::exp(tc);
            case FlowQuantity::rate_remainder: return c * std::expm1(tc);
            case FlowQuantity::eulerian_slope: return c;
        }
    }
    const double rv = r.r();
    // At r = 1 the flow is linear in t: both remainders vanish identically.
    if (rv == 1.0) {
        switch (q) {
            case FlowQuantity::jacobian: return 1.0 + tc;
            case FlowQuantity::jacobian_remainder: return 0.0;
            case FlowQuantity::rate: return c;
            case FlowQuantity::rate_remainder: return 0.0;
            case FlowQuantity::eulerian_slope: return c / (1.0 + tc);
        }
    }
    const double log_base = std::log1p(tc / rv);
    switch (q) {
        case FlowQuantity::jacobian: return std::exp(rv * log_base);
        case FlowQuantity::jacobian_remainder: return std::expm1(rv * log_base) - tc;
        case FlowQuantity::rate: return c * std::exp((rv - 1.0) * log_base);
        case FlowQuantity::rate_remainder: return c * std::expm1((rv - 1.0) * log_base);
        case FlowQuantity::eulerian_slope: return c / (1.0 + tc / rv);
    }
    return 0.0;
}

void flow_map(FlowQuantity q, std::span<const double> slopes, double t, const Exponent& r,
              std::span<double> out, Exec exec) {
    for_each_index(slopes.size(), exec, [&](std::size_t i) { out[i] = flow_value(q, slopes[i], t, r); });
}

void isometry_line(std::span<const double> phi_x, double r, std::span<double> out, Exec exec) {
    for_each_index(phi_x.size(), exec,
                   [&](std::size_t i) { out[i] = r * std::expm1(std::log(phi_x[i]) / r); });
}

void isometry_circle(std::span<const double> phi_x, double r, std::span<double> out, Exec exec) {
    for_each_index(phi_x.size(), exec, [&](std::size_t i) { out[i] = r * std::pow(phi_x[i], 1.0 / r); });
}

void isometry_line_inverse(std::span<const double> f, double r, std::span<double> out, Exec exec) {
    for_each_index(f.size(), exec, [&](std::size_t i) { out[i] = std::expm1(r * std::log1p(f[i] / r)); });
}

void finsler_integrand(std::span<const double> phi_x, std::span<const double> h_x, double r,
                       std::span<double> out, Exec exec) {
    for_each_index(phi_x.size(), exec, [&](std::size_t i) {
        const double a = std::abs(h_x[i]);
        out[i] = a == 0.0 ? 0.0 : std::exp((1.0 - r) * std::log(phi_x[i]) + r * std::log(a));
    });
}

void nonlocal_rhs(std::span<const double> u, std::span<const double> u_x,
                  std::span<const double> nonlocal, double coeff, std::span<double> out, Exec exec) {
    for_each_index(u.size(), exec,
                   [&](std::size_t i) { out[i] = -u[i] * u_x[i] + coeff * nonlocal[i]; });
}

void square(std::span<const double> u_x, std::span<double> out, Exec exec) {
    for_each_index(u_x.size(), exec, [&](std::size_t i) { out[i] = u_x[i] * u_x[i]; });
}

}  // namespace pjflow::kernels
