#include "pjflow/nonperiodic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>

#include "pjflow/detail/time_stencil.hpp"
#include "pjflow/errors.hpp"
#include "pjflow/kernels.hpp"

namespace pjflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using kernels::FlowQuantity;

// Runs fn(k) for k in [0, n) across threads and rethrows the first failure.
template <class Fn>
void parallel_over(std::size_t n, Fn&& fn) {
    std::exception_ptr failure;
    std::mutex guard;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        try {
            fn(static_cast<std::size_t>(k));
        } catch (...) {
            std::lock_guard lock(guard);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

std::vector<double> secant_slopes(const GridFunction& u) {
    const double h = u.spacing();
    std::vector<double> s(u.size() - 1);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) s[i] = (u[i + 1] - u[i]) / h;
    return s;
}

// base + sum of cell contributions, as a running sum from the left edge.
std::vector<double> accumulate_cells(std::span<const double> base, std::span<const double> cells, double h) {
    std::vector<double> out(base.size());
    double acc = 0.0;
    out[0] = base[0];
    for (std::size_t i = 0; i < cells.size(); ++i) {
        acc += h * cells[i];
        out[i + 1] = base[i + 1] + acc;
    }
    return out;
}

void require_line(const GridFunction& f, const char* what) {
    if (!f.domain().is_line()) {
        throw Error(ErrorKind::unsupported, std::string(what) + " needs a line window");
    }
}

void require_left_decay(const GridFunction& u0) {
    if (!(std::abs(u0[0]) <= kDecayTol)) {
        std::ostringstream msg;
        msg << "initial velocity does not decay at the left edge (|u0(a)| = " << std::abs(u0[0]) << ")";
        throw Error(ErrorKind::invalid_input, msg.str());
    }
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (!f.same_grid(g)) throw Error(ErrorKind::domain_mismatch, "grid functions live on different grids");
}

TrajectoryDiagnostics diagnose(double t, std::span<const double> phi_x, std::span<const double> rate_x,
                               const Domain& domain, const Exponent& r) {
    TrajectoryDiagnostics d;
    d.time = t;
    const auto [lo, hi] = std::minmax_element(phi_x.begin(), phi_x.end());
    d.min_phi_x = *lo;
    d.max_phi_x = *hi;
    if (r.is_infinite()) {
        double m = 0.0;
        for (std::size_t i = 0; i < phi_x.size(); ++i) m = std::max(m, std::abs(rate_x[i] / phi_x[i]));
        d.finsler_speed = m;
    } else if (r.r() >= 1.0) {
        std::vector<double> w(phi_x.size());
        kernels::finsler_integrand(phi_x, rate_x, r.r(), w, Exec::serial);
        const GridFunction integrand(domain, std::move(w));
        d.finsler_speed = std::pow(integrate(integrand), 1.0 / r.r());
    } else {
        d.finsler_speed = std::numeric_limits<double>::quiet_NaN();
    }
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Diffeo / FlowParams

Diffeo::Diffeo(GridFunction phi, std::vector<double> phi_x) : phi_(std::move(phi)), phi_x_(std::move(phi_x)) {
    require_line(phi_, "Diffeo");
    if (phi_x_.size() != phi_.size()) throw Error(ErrorKind::domain_mismatch, "phi_x must match phi samples");
    for (std::size_t i = 0; i + 1 < phi_.size(); ++i) {
        if (!(phi_[i + 1] > phi_[i])) {
            std::ostringstream msg;
            msg << "diffeomorphism samples not strictly increasing at index " << i;
            throw MonotonicityError(i, msg.str());
        }
    }
    for (std::size_t i = 0; i < phi_x_.size(); ++i) {
        if (!(phi_x_[i] > 0.0) || !std::isfinite(phi_x_[i])) {
            std::ostringstream msg;
            msg << "phi_x not strictly positive at index " << i << " (" << phi_x_[i] << ")";
            throw MonotonicityError(i, msg.str());
        }
    }
    if (!(std::abs(phi_[0] - phi_.domain().a()) <= kAnchorTol)) {
        throw Error(ErrorKind::invalid_input, "diffeomorphism must fix the left window edge");
    }
}

Diffeo Diffeo::from_samples(GridFunction phi) {
    auto d = derivative(phi);
    return Diffeo(std::move(phi), to_vector(d.values()));
}

Diffeo Diffeo::from_samples(GridFunction phi, std::vector<double> phi_x) {
    return Diffeo(std::move(phi), std::move(phi_x));
}

Diffeo Diffeo::identity(Domain domain, std::size_t n) {
    return Diffeo(GridFunction::sample(domain, n, [](double x) { return x; }), std::vector<double>(n, 1.0));
}

double Diffeo::min_phi_x() const { return *std::min_element(phi_x_.begin(), phi_x_.end()); }

FlowParams FlowParams::uniform(Exponent exponent, double t_end, std::size_t steps) {
    if (steps == 0 || !(t_end > 0.0)) throw Error(ErrorKind::invalid_input, "uniform times need t_end > 0, steps > 0");
    std::vector<double> t(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) t[k] = t_end * static_cast<double>(k) / static_cast<double>(steps);
    t[steps] = t_end;
    return {exponent, std::move(t)};
}

void FlowParams::validate() const {
    if (times.empty() || times[0] != 0.0) throw Error(ErrorKind::invalid_input, "times must start at 0");
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        if (!(times[k + 1] > times[k])) throw Error(ErrorKind::invalid_input, "times must be strictly increasing");
    }
}

// ---------------------------------------------------------------------------
// Isometry

GridFunction phi_map(const Diffeo& phi, double r, IsometryRange range) {
    const bool ok = range == IsometryRange::finsler ? r >= 1.0 : r > 0.0;
    if (!ok || !std::isfinite(r)) {
        throw Error(ErrorKind::invalid_input, range == IsometryRange::finsler
                                                  ? "phi_map requires finite r >= 1"
                                                  : "phi_map requires finite r > 0");
    }
    std::vector<double> f(phi.size());
    kernels::isometry_line(phi.phi_x(), r, f, Exec::parallel);
    return phi.phi().with_values(std::move(f));
}

Diffeo phi_inverse_map(const GridFunction& f, double r, QuadratureRule rule) {
    require_line(f, "phi_inverse_map");
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_input, "phi_inverse_map requires finite r > 0");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] > -r)) {
            std::ostringstream msg;
            msg << "f(x_" << i << ") = " << f[i] << " is not above -r = " << -r;
            throw Error(ErrorKind::out_of_image, msg.str());
        }
    }
    require_left_decay(f);
    std::vector<double> g(f.size());
    kernels::isometry_line_inverse(f.values(), r, g, Exec::parallel);
    const auto disp = cumulative_integral(f.with_values(g), rule);
    std::vector<double> phi(f.size()), phi_x(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        phi[i] = f.x(i) + disp[i];
        phi_x[i] = 1.0 + g[i];
    }
    return Diffeo::from_samples(f.with_values(std::move(phi)), std::move(phi_x));
}

// ---------------------------------------------------------------------------
// Exact flow

double blowup_time_from_slopes(std::span<const double> slopes, const Exponent& r) {
    if (r.is_infinite() || slopes.empty()) return kInf;
    const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
    if (r.r() > 0.0) return *lo >= 0.0 ? kInf : -r.r() / *lo;
    return *hi <= 0.0 ? kInf : std::abs(r.r()) / *hi;
}

double blowup_time(const GridFunction& u0, const Exponent& r) {
    const auto d = derivative(u0);
    return blowup_time_from_slopes(d.values(), r);
}

Trajectory exact_flow(const GridFunction& u0, const FlowParams& params, const FlowOptions& options) {
    require_line(u0, "exact_flow");
    params.validate();
    require_left_decay(u0);
    const Exponent& r = params.exponent;

    std::vector<double> nodal;
    if (options.slopes) {
        require_same_grid(u0, *options.slopes);
        nodal = to_vector(options.slopes->values());
    } else {
        nodal = to_vector(derivative(u0).values());
    }
    const auto secants = secant_slopes(u0);
    double t_star = blowup_time_from_slopes(nodal, r);
    if (options.scheme == FlowScheme::piecewise_linear) {
        t_star = std::min(t_star, blowup_time_from_slopes(secants, r));
    }
    for (double t : params.times) {
        if (t >= t_star) {
            std::ostringstream msg;
            msg << "requested time " << t << " is at or beyond the blow-up time " << t_star;
            throw BlowUpError(t_star, msg.str());
        }
    }

    const std::size_t n = u0.size();
    const std::size_t m = params.times.size();
    const double h = u0.spacing();
    const auto x = u0.nodes();
    Trajectory traj{params, {}, std::vector<std::vector<double>>(m), std::vector<std::vector<double>>(m), {}, t_star,
                    true};
    std::vector<std::optional<Diffeo>> slots(m);
    traj.diagnostics.resize(m);

    parallel_over(m, [&](std::size_t k) {
        const double t = params.times[k];
        std::vector<double> phi_x(n), rate_x(n), base(n), phi, rate;
        kernels::flow_map(FlowQuantity::jacobian, nodal, t, r, phi_x, Exec::serial);
        kernels::flow_map(FlowQuantity::rate, nodal, t, r, rate_x, Exec::serial);
        for (std::size_t i = 0; i < n; ++i) base[i] = x[i] + t * u0[i];
        if (options.scheme == FlowScheme::piecewise_linear) {
            std::vector<double> cells(n - 1);
            kernels::flow_map(FlowQuantity::jacobian_remainder, secants, t, r, cells, Exec::serial);
            phi = accumulate_cells(base, cells, h);
            kernels::flow_map(FlowQuantity::rate_remainder, secants, t, r, cells, Exec::serial);
            rate = accumulate_cells(u0.values(), cells, h);
        } else {
            std::vector<double> rem(n);
            kernels::flow_map(FlowQuantity::jacobian_remainder, nodal, t, r, rem, Exec::serial);
            const auto disp = cumulative_integral(u0.with_values(rem), QuadratureRule::simpson);
            kernels::flow_map(FlowQuantity::rate_remainder, nodal, t, r, rem, Exec::serial);
            const auto drate = cumulative_integral(u0.with_values(rem), QuadratureRule::simpson);
            phi.resize(n);
            rate.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                phi[i] = base[i] + disp[i];
                rate[i] = u0[i] + drate[i];
            }
        }
        traj.diagnostics[k] = diagnose(t, phi_x, rate_x, u0.domain(), r);
        slots[k].emplace(Diffeo::from_samples(u0.with_values(std::move(phi)), std::move(phi_x)));
        traj.rates[k] = std::move(rate);
        traj.rate_x[k] = std::move(rate_x);
    });
    traj.diffeos.reserve(m);
    for (auto& s : slots) traj.diffeos.push_back(std::move(*s));
    return traj;
}

// ---------------------------------------------------------------------------
// Eulerian reconstruction

namespace {

void require_rates(const Trajectory& traj, std::size_t k) {
    if (k >= traj.size()) throw Error(ErrorKind::invalid_input, "time index out of range");
    if (!traj.has_rates()) {
        throw Error(ErrorKind::insufficient_data, "trajectory carries no phi_t samples");
    }
}

// X_j = phi^{-1}(x_j) on the window grid, continued affinely past phi(b).
std::vector<double> inverse_on_window(const Diffeo& d) {
    const auto& phi = d.phi();
    std::vector<double> inv_slopes(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) inv_slopes[i] = 1.0 / d.phi_x()[i];
    const HermiteInterpolant inverse(to_vector(phi.values()), phi.nodes(), std::move(inv_slopes), true);
    std::vector<double> X(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) X[j] = inverse(phi.x(j));
    return X;
}

}  // namespace

GridFunction eulerian_velocity(const Trajectory& traj, std::size_t k) {
    require_rates(traj, k);
    const Diffeo& d = traj.diffeos[k];
    const auto X = inverse_on_window(d);
    const HermiteInterpolant rate(d.phi().nodes(), traj.rates[k], traj.rate_x[k], false);
    std::vector<double> u(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) u[j] = rate(X[j]);
    return d.phi().with_values(std::move(u));
}

std::vector<GridFunction> eulerian_velocities(const Trajectory& traj) {
    std::vector<GridFunction> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) out.push_back(eulerian_velocity(traj, k));
    return out;
}

GridFunction lagrangian_velocity_slope(const Trajectory& traj, std::size_t k) {
    require_rates(traj, k);
    const Diffeo& d = traj.diffeos[k];
    std::vector<double> w(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) w[i] = traj.rate_x[k][i] / d.phi_x()[i];
    return d.phi().with_values(std::move(w));
}

GridFunction eulerian_velocity_slope(const Trajectory& traj, std::size_t k) {
    const auto w = lagrangian_velocity_slope(traj, k);
    const auto X = inverse_on_window(traj.diffeos[k]);
    const auto interp = make_interpolant(w);
    std::vector<double> out(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) out[j] = interp(X[j]);
    return w.with_values(std::move(out));
}

// ---------------------------------------------------------------------------
// Completion

bool in_completion(const GridFunction& phi, double tol) {
    if (!phi.domain().is_line()) return false;
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
        if (phi[i + 1] - phi[i] < -tol) return false;
    }
    return std::abs(phi[0] - phi.domain().a()) <= kAnchorTol;
}

CompletionPoint continue_to_blowup(const GridFunction& u0, const Exponent& r) {
    require_line(u0, "continue_to_blowup");
    if (r.is_infinite() || r.r() < 0.0) {
        throw Error(ErrorKind::invalid_input, "the completion limit is defined for finite r > 0");
    }
    const double t = blowup_time(u0, r);
    if (std::isinf(t)) throw BlowUpError(t, "initial velocity is nondecreasing: no blow-up", ErrorKind::no_blow_up);

    const auto nodal = derivative(u0);
    const auto secants = secant_slopes(u0);
    const double rv = r.r();
    const auto jac = [&](double c) { return std::pow(std::max(0.0, 1.0 + t * c / rv), rv); };
    std::vector<double> phi_x(u0.size()), cells(secants.size()), base(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) {
        phi_x[i] = jac(nodal[i]);
        base[i] = u0.x(i) + t * u0[i];
    }
    for (std::size_t i = 0; i < secants.size(); ++i) cells[i] = jac(secants[i]) - 1.0 - t * secants[i];
    auto phi = u0.with_values(accumulate_cells(base, cells, u0.spacing()));
    const double lo = *std::min_element(phi_x.begin(), phi_x.end());
    const bool member = in_completion(phi);
    return CompletionPoint{t, std::move(phi), std::move(phi_x), lo, lo > 0.0, member};
}

// ---------------------------------------------------------------------------
// Metric quantities

double finsler_norm_from_slope(const Diffeo& phi, std::span<const double> h_x, double r) {
    if (!(r >= 1.0)) throw Error(ErrorKind::invalid_input, "finsler_norm requires r >= 1");
    if (h_x.size() != phi.size()) throw Error(ErrorKind::domain_mismatch, "tangent samples must match the grid");
    if (std::isinf(r)) {
        double m = 0.0;
        for (std::size_t i = 0; i < h_x.size(); ++i) m = std::max(m, std::abs(h_x[i]) / phi.phi_x()[i]);
        return m;
    }
    std::vector<double> w(h_x.size());
    kernels::finsler_integrand(phi.phi_x(), h_x, r, w, Exec::parallel);
    return std::pow(integrate(phi.phi().with_values(std::move(w))), 1.0 / r);
}

double finsler_norm(const Diffeo& phi, const GridFunction& h, double r) {
    require_same_grid(phi.phi(), h);
    const auto hx = derivative(h);
    return finsler_norm_from_slope(phi, hx.values(), r);
}

namespace {

// phi_tx at every sample by differences of phi_x in time.
std::vector<std::vector<double>> time_rates(const Trajectory& traj) {
    const std::size_t m = traj.size();
    if (m < 2) throw Error(ErrorKind::insufficient_data, "need at least two time samples");
    const auto& t = traj.params.times;
    const std::size_t n = traj.diffeos[0].size();
    std::vector<std::vector<double>> out(m, std::vector<double>(n));
    for (std::size_t k = 0; k < m; ++k) {
        const auto w = detail::first_derivative_weights(t, k);
        const std::size_t s = detail::stencil_start(m, k);
        const auto a = traj.diffeos[s].phi_x();
        const auto b = traj.diffeos[s + 1].phi_x();
        for (std::size_t i = 0; i < n; ++i) {
            out[k][i] = w.wm * a[i] + w.w0 * b[i];
            if (m > 2) out[k][i] += w.wp * traj.diffeos[s + 2].phi_x()[i];
        }
    }
    return out;
}

double trapezoid(std::span<const double> t, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) s += 0.5 * (t[k + 1] - t[k]) * (y[k] + y[k + 1]);
    return s;
}

}  // namespace

double energy(const Trajectory& traj, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_input, "energy needs finite r > 0");
    const auto rates = time_rates(traj);
    const auto& t = traj.params.times;
    std::vector<double> e(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& d = traj.diffeos[k];
        std::vector<double> w(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double v = std::abs(rates[k][i] / d.phi_x()[i]);
            w[i] = v == 0.0 ? 0.0 : std::pow(v, r) * d.phi_x()[i];
        }
        e[k] = integrate(d.phi().with_values(std::move(w)));
    }
    const double span = t.back() - t.front();
    return std::pow(span, r - 1.0) * trapezoid(t, e);
}

std::vector<double> finsler_speeds(const Trajectory& traj, double r) {
    const auto rates = time_rates(traj);
    std::vector<double> s(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) s[k] = finsler_norm_from_slope(traj.diffeos[k], rates[k], r);
    return s;
}

double path_length(const Trajectory& traj, double r) {
    const auto s = finsler_speeds(traj, r);
    return trapezoid(traj.params.times, s);
}

double geodesic_distance(const Diffeo& phi0, const Diffeo& phi1, double r) {
    require_same_grid(phi0.phi(), phi1.phi());
    const auto f0 = phi_map(phi0, r);
    const auto f1 = phi_map(phi1, r);
    std::vector<double> d(f0.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = f0[i] - f1[i];
    return lp_norm(f0.with_values(std::move(d)), r);
}

Trajectory bvp_geodesic(const Diffeo& phi0, const Diffeo& phi1, double r, std::vector<double> times) {
    require_same_grid(phi0.phi(), phi1.phi());
    if (!(r >= 1.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_input, "bvp_geodesic requires finite r >= 1");
    if (times.empty()) throw Error(ErrorKind::invalid_input, "bvp_geodesic needs times");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < 0.0 || times[k] > 1.0) throw Error(ErrorKind::invalid_input, "bvp times must lie in [0, 1]");
        if (k > 0 && !(times[k] > times[k - 1])) {
            throw Error(ErrorKind::invalid_input, "bvp times must be strictly increasing");
        }
    }
    const auto f0 = phi_map(phi0, r);
    const auto f1 = phi_map(phi1, r);
    const std::size_t n = phi0.size();
    const std::size_t m = times.size();
    const auto& grid = phi0.phi();
    const auto p0 = phi0.phi_x();
    const auto p1 = phi1.phi_x();

    // Only the part of phi_x that is nonlinear in s goes through quadrature, so
    // both endpoints are reproduced to rounding.
    Trajectory traj{FlowParams{Exponent::from_r(r), times},
                    {},
                    std::vector<std::vector<double>>(m),
                    std::vector<std::vector<double>>(m),
                    std::vector<TrajectoryDiagnostics>(m),
                    kInf,
                    r > 1.0};
    std::vector<std::optional<Diffeo>> slots(m);
    parallel_over(m, [&](std::size_t k) {
        const double s = times[k];
        std::vector<double> f(n), g(n), rem(n), rrem(n), phi(n), phi_x(n), rate(n), rate_x(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = (1.0 - s) * f0[i] + s * f1[i];
        kernels::isometry_line_inverse(f, r, g, Exec::serial);
        for (std::size_t i = 0; i < n; ++i) {
            phi_x[i] = 1.0 + g[i];
            rem[i] = g[i] - (1.0 - s) * (p0[i] - 1.0) - s * (p1[i] - 1.0);
            rate_x[i] = std::pow(1.0 + f[i] / r, r - 1.0) * (f1[i] - f0[i]);
            rrem[i] = rate_x[i] - (p1[i] - p0[i]);
        }
        const auto disp = cumulative_integral(grid.with_values(std::move(rem)));
        const auto drate = cumulative_integral(grid.with_values(std::move(rrem)));
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.x(i);
            phi[i] = x + (1.0 - s) * (phi0.phi()[i] - x) + s * (phi1.phi()[i] - x) + disp[i];
            rate[i] = phi1.phi()[i] - phi0.phi()[i] + drate[i];
        }
        traj.diagnostics[k] = diagnose(s, phi_x, rate_x, grid.domain(), traj.params.exponent);
        slots[k].emplace(Diffeo::from_samples(grid.with_values(std::move(phi)), std::move(phi_x)));
        traj.rates[k] = std::move(rate);
        traj.rate_x[k] = std::move(rate_x);
    });
    for (auto& sl : slots) traj.diffeos.push_back(std::move(*sl));
    return traj;
}

// ---------------------------------------------------------------------------
// Residuals

double lagrangian_residual(const Trajectory& traj, double lambda) {
    const std::size_t m = traj.size();
    if (m < 3) throw Error(ErrorKind::insufficient_data, "lagrangian_residual needs at least three time samples");
    const auto& t = traj.params.times;
    const std::size_t n = traj.diffeos[0].size();
    std::vector<std::vector<double>> logj(m, std::vector<double>(n));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < n; ++i) logj[k][i] = std::log(traj.diffeos[k].phi_x()[i]);
    }
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < m; ++k) {
        const auto d1 = detail::first_derivative_weights(t, k);
        const auto d2 = detail::second_derivative_weights(t, k);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = logj[k - 1][i], b = logj[k][i], c = logj[k + 1][i];
            const double v = d1.wm * a + d1.w0 * b + d1.wp * c;
            const double vt = d2.wm * a + d2.w0 * b + d2.wp * c;
            worst = std::max(worst, std::abs(vt + lambda * v * v));
        }
    }
    return worst;
}

double pj_residual(std::span<const double> times, std::span<const GridFunction> velocities, double lambda,
                   PjForm form) {
    const std::size_t m = velocities.size();
    if (m < 3 || times.size() != m) {
        throw Error(ErrorKind::insufficient_data, "pj_residual needs at least three matching time samples");
    }
    for (const auto& u : velocities) require_same_grid(velocities[0], u);
    const std::size_t n = velocities[0].size();
    constexpr std::size_t margin = 4;
    if (n <= 2 * margin) throw Error(ErrorKind::insufficient_data, "grid too small for third derivatives");

    struct Derivs {
        std::vector<double> u, ux, uxx, uxxx;
    };
    std::vector<Derivs> d(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto ux = derivative(velocities[k]);
        const auto uxx = derivative(ux);
        const auto uxxx = derivative(uxx);
        d[k] = {to_vector(velocities[k].values()), to_vector(ux.values()), to_vector(uxx.values()),
                to_vector(uxxx.values())};
    }
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < m; ++k) {
        const auto w = detail::first_derivative_weights(times, k);
        const auto& cur = d[k];
        for (std::size_t i = margin; i + margin < n; ++i) {
            double res;
            if (form == PjForm::differentiated) {
                const double utxx = w.wm * d[k - 1].uxx[i] + w.w0 * cur.uxx[i] + w.wp * d[k + 1].uxx[i];
                res = utxx + (1.0 + 2.0 * lambda) * cur.ux[i] * cur.uxx[i] + cur.u[i] * cur.uxxx[i];
            } else {
                const double utx = w.wm * d[k - 1].ux[i] + w.w0 * cur.ux[i] + w.wp * d[k + 1].ux[i];
                res = utx + cur.u[i] * cur.uxx[i] + lambda * cur.ux[i] * cur.ux[i];
            }
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

}  // namespace pjflow
