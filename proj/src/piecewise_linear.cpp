#include "pjflow/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>

#include "pjflow/errors.hpp"

namespace pjflow {

namespace {

bool same_slope(double s, double t) {
    return std::abs(s - t) <= 1e-12 * std::max({1.0, std::abs(s), std::abs(t)});
}

void check_arrays(const std::vector<double>& b, const std::vector<double>& v) {
    if (b.empty() || b.size() != v.size()) {
        throw Error(ErrorKind::invalid_input, "breakpoints and node values must be non-empty and match");
    }
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        if (!(b[i + 1] > b[i])) throw MonotonicityError(i, "breakpoints must be strictly increasing");
    }
    for (double x : b) {
        if (!std::isfinite(x)) throw Error(ErrorKind::invalid_input, "non-finite breakpoint");
    }
    for (double x : v) {
        if (!std::isfinite(x)) throw Error(ErrorKind::invalid_input, "non-finite node value");
    }
}

}  // namespace

PiecewiseLinearFn PiecewiseLinearFn::line(std::vector<double> breakpoints, std::vector<double> node_values,
                                          double left_tail_slope, double right_tail_slope) {
    check_arrays(breakpoints, node_values);
    PiecewiseLinearFn p;
    p.breakpoints_ = std::move(breakpoints);
    p.node_values_ = std::move(node_values);
    p.left_tail_slope_ = left_tail_slope;
    p.right_tail_slope_ = right_tail_slope;
    p.canonicalize();
    return p;
}

PiecewiseLinearFn PiecewiseLinearFn::circle(std::vector<double> breakpoints,
                                            std::vector<double> node_values) {
    check_arrays(breakpoints, node_values);
    if (breakpoints.front() < 0.0 || breakpoints.back() >= 1.0) {
        throw Error(ErrorKind::invalid_input, "circle breakpoints must lie in [0,1)");
    }
    PiecewiseLinearFn p;
    p.periodic_ = true;
    p.breakpoints_ = std::move(breakpoints);
    p.node_values_ = std::move(node_values);
    p.canonicalize();
    return p;
}

void PiecewiseLinearFn::canonicalize() {
    const std::size_t m = breakpoints_.size();
    if (m < 3 && !periodic_) return;
    std::vector<double> b{breakpoints_.front()};
    std::vector<double> v{node_values_.front()};
    const std::size_t last = periodic_ ? m : m - 1;
    for (std::size_t i = 1; i < last; ++i) {
        if (same_slope(slope(i - 1), slope(i))) continue;
        b.push_back(breakpoints_[i]);
        v.push_back(node_values_[i]);
    }
    if (!periodic_) {
        b.push_back(breakpoints_.back());
        v.push_back(node_values_.back());
    }
    breakpoints_ = std::move(b);
    node_values_ = std::move(v);
}

std::size_t PiecewiseLinearFn::segment_count() const {
    return periodic_ ? breakpoints_.size() : breakpoints_.size() - 1;
}

double PiecewiseLinearFn::segment_length(std::size_t i) const {
    if (periodic_ && i + 1 == breakpoints_.size()) return breakpoints_.front() + 1.0 - breakpoints_.back();
    return breakpoints_[i + 1] - breakpoints_[i];
}

double PiecewiseLinearFn::slope(std::size_t i) const {
    const std::size_t j = (i + 1) % breakpoints_.size();
    return (node_values_[j] - node_values_[i]) / segment_length(i);
}

std::vector<double> PiecewiseLinearFn::slopes() const {
    std::vector<double> s(segment_count());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = slope(i);
    return s;
}

double PiecewiseLinearFn::operator()(double x) const {
    const auto& b = breakpoints_;
    const auto& v = node_values_;
    if (periodic_) {
        x -= std::floor(x);
        if (x < b.front()) x += 1.0;
        auto it = std::upper_bound(b.begin(), b.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - b.begin()) - 1;
        return v[i] + slope(i) * (x - b[i]);
    }
    if (x <= b.front()) return v.front() + left_tail_slope_ * (x - b.front());
    if (x >= b.back()) return v.back() + right_tail_slope_ * (x - b.back());
    auto it = std::upper_bound(b.begin(), b.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - b.begin()) - 1;
    const double t = (x - b[i]) / (b[i + 1] - b[i]);
    return v[i] + t * (v[i + 1] - v[i]);
}

GridFunction pl_to_grid(const PiecewiseLinearFn& p, const Domain& domain, std::size_t n) {
    return GridFunction::sample(domain, n, [&](double x) { return p(x); });
}

}  // namespace pjflow
