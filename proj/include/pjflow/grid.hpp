#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pjflow/exec.hpp"

namespace pjflow {

/// Default tolerance for the left-decay condition lim_{x->-inf} u = 0 on a
/// truncated window.
inline constexpr double kDecayTol = 1e-10;

/// Either a truncated window [a,b] of the real line or the unit circle
/// identified with [0,1).
class Domain {
public:
    enum class Kind { line, circle };

    static Domain line(double a, double b);
    static Domain circle();

    Kind kind() const noexcept { return kind_; }
    bool is_line() const noexcept { return kind_ == Kind::line; }
    bool is_circle() const noexcept { return kind_ == Kind::circle; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double length() const noexcept { return b_ - a_; }

    /// Uniform spacing for n samples: (b-a)/(n-1) on the line, 1/n on the circle.
    double spacing(std::size_t n) const;
    double node(std::size_t i, std::size_t n) const;

    bool operator==(const Domain&) const = default;

private:
    Domain(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_;
    double b_;
};

/// Real samples on a uniform grid. Immutable after construction.
class GridFunction {
public:
    GridFunction(Domain domain, std::vector<double> values);

    static GridFunction sample(Domain domain, std::size_t n,
                               const std::function<double(double)>& fn);
    static GridFunction constant(Domain domain, std::size_t n, double value);

    const Domain& domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const { return domain_.spacing(values_.size()); }
    double x(std::size_t i) const { return domain_.node(i, values_.size()); }
    std::vector<double> nodes() const;

    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Same grid, new samples.
    GridFunction with_values(std::vector<double> values) const;

    bool same_grid(const GridFunction& other) const {
        return domain_ == other.domain_ && size() == other.size();
    }

private:
    Domain domain_;
    std::vector<double> values_;
};

enum class QuadratureRule { trapezoid, simpson };

/// (integral |f|^r)^(1/r) by composite quadrature; r = +inf gives the max norm.
/// Requires r >= 1.
double lp_norm(const GridFunction& f, double r,
               QuadratureRule rule = QuadratureRule::trapezoid);

/// Plain composite quadrature of f over its domain.
double integrate(const GridFunction& f, QuadratureRule rule = QuadratureRule::trapezoid);

/// Second-order central differences; one-sided second-order stencils at line
/// endpoints, cyclic on the circle.
GridFunction derivative(const GridFunction& f);

/// Fourth-order differences (five-point, one-sided near line endpoints). Used
/// for Hermite slopes where interpolation accuracy matters.
std::vector<double> derivative_fourth_order(const GridFunction& f);

/// F(x) = integral_a^x f on a line window, F(a) = 0. Trapezoid is second
/// order; simpson selects a fourth-order cell rule (cubic through four
/// neighbouring samples).
GridFunction cumulative_integral(const GridFunction& f,
                                 QuadratureRule rule = QuadratureRule::trapezoid);

/// Circle variant anchored at the basepoint x = 0. Returns n samples of
/// integral_0^{x_i} f followed by the full-period total as the last entry
/// (size n + 1).
std::vector<double> cumulative_integral_periodic(
    const GridFunction& f, QuadratureRule rule = QuadratureRule::trapezoid);

/// Piecewise cubic Hermite interpolant on strictly increasing nodes. When
/// built as monotone, Fritsch-Carlson limiting keeps each interval monotone
/// so the interpolant never overshoots the data.
class HermiteInterpolant {
public:
    HermiteInterpolant(std::vector<double> nodes, std::vector<double> values,
                       std::vector<double> slopes, bool monotone);

    /// Affine extension with the end slopes outside [nodes.front(), nodes.back()].
    double operator()(double x) const;

    double front() const { return nodes_.front(); }
    double back() const { return nodes_.back(); }

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> slopes_;
};

/// Interpolant of a line grid function (slopes from fourth-order differences).
HermiteInterpolant make_interpolant(const GridFunction& f, bool monotone = false);

/// Inverse of a strictly increasing line grid function, sampled on the uniform
/// grid of the image interval [phi.front, phi.back] with the same sample
/// count. Exact at the inverted nodes.
GridFunction invert_monotone(const GridFunction& phi);

/// Inverse built from known derivative samples phi_x (all > 0), used when the
/// caller holds exact slopes.
GridFunction invert_monotone(const GridFunction& phi, std::span<const double> phi_x);

/// Samples f(phi(x_i)). On the line, phi's range must sit inside f's window
/// (up to a padding of 1e-9 of the window length); on the circle phi is read
/// modulo 1.
GridFunction compose(const GridFunction& f, const GridFunction& phi);

/// Evaluate f between grid nodes (Hermite cubic, cyclic on the circle).
double evaluate(const GridFunction& f, double x);

/// Largest |f - g| over a shared grid.
double max_abs_diff(const GridFunction& f, const GridFunction& g);

}  // namespace pjflow
