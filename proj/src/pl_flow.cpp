#include "pjflow/pl_flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pjflow/errors.hpp"
#include "pjflow/kernels.hpp"
#include "pjflow/nonperiodic.hpp"

namespace pjflow {

using kernels::FlowQuantity;

PLState::PLState(PiecewiseLinearFn velocity0, Exponent exponent)
    : velocity0_(std::move(velocity0)), exponent_(exponent) {
    if (velocity0_.periodic()) throw Error(ErrorKind::unsupported, "PL flows are defined on the line only");
    if (velocity0_.left_tail_slope() != 0.0 || std::abs(velocity0_.node_values().front()) > kDecayTol) {
        throw Error(ErrorKind::invalid_input, "PL velocity must vanish to the left of its first breakpoint");
    }
    if (velocity0_.right_tail_slope() != 0.0) {
        throw Error(ErrorKind::invalid_input, "PL velocity needs a zero right tail slope");
    }
    blowup_time_ = blowup_time_from_slopes(velocity0_.slopes(), exponent_);
}

namespace {

void check_time(const PLState& s, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::invalid_input, "time must be finite and >= 0");
    if (t >= s.blowup_time()) {
        std::ostringstream msg;
        msg << "time " << t << " is at or beyond the blow-up time " << s.blowup_time();
        throw BlowUpError(s.blowup_time(), msg.str());
    }
}

// Node values v_0 = start, v_{i+1} = v_i + length_i * q(c_i).
std::vector<double> telescope(const PLState& s, double t, FlowQuantity q, double start) {
    const auto& u = s.velocity0();
    std::vector<double> v(u.breakpoints().size());
    v[0] = start;
    for (std::size_t i = 0; i < u.segment_count(); ++i) {
        v[i + 1] = v[i] + u.segment_length(i) * kernels::flow_value(q, u.slope(i), t, s.exponent());
    }
    return v;
}

}  // namespace

PiecewiseLinearFn pl_exact_flow(const PLState& state, double t) {
    check_time(state, t);
    const auto& b = state.velocity0().breakpoints();
    return PiecewiseLinearFn::line(b, telescope(state, t, FlowQuantity::jacobian, b.front()), 1.0, 1.0);
}

PiecewiseLinearFn pl_eulerian_velocity(const PLState& state, double t) {
    check_time(state, t);
    const auto& b = state.velocity0().breakpoints();
    auto moved = telescope(state, t, FlowQuantity::jacobian, b.front());
    auto values = telescope(state, t, FlowQuantity::rate, 0.0);
    return PiecewiseLinearFn::line(std::move(moved), std::move(values), 0.0, 0.0);
}

double pl_slope_energy(const PiecewiseLinearFn& u, const Exponent& r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.segment_count(); ++i) {
        const double c = std::abs(u.slope(i));
        if (r.is_infinite()) {
            acc = std::max(acc, c);
        } else if (c > 0.0) {
            acc += std::pow(c, r.r()) * u.segment_length(i);
        }
    }
    return acc;
}

}  // namespace pjflow
