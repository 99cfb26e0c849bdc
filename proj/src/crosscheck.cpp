#include "pjflow/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pjflow/errors.hpp"
#include "pjflow/kernels.hpp"
#include "pjflow/nonperiodic.hpp"
#include "pjflow/periodic.hpp"

namespace pjflow {

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

class NonlocalRhs {
public:
    NonlocalRhs(const GridFunction& grid, double coeff, SpatialScheme scheme)
        : grid_(grid), coeff_(coeff), scheme_(scheme), ux_(grid.size()), sq_(grid.size()) {}

    const std::vector<double>& last_slope() const { return ux_; }

    void operator()(const std::vector<double>& u, std::vector<double>& out) {
        slope(u);
        kernels::square(ux_, sq_, Exec::parallel);
        const auto integral = cumulative_integral(grid_.with_values(sq_));
        kernels::nonlocal_rhs(u, ux_, integral.values(), coeff_, out, Exec::parallel);
    }

    void slope(const std::vector<double>& u) {
        if (scheme_ == SpatialScheme::central) {
            const auto d = derivative(grid_.with_values(u));
            std::copy(d.values().begin(), d.values().end(), ux_.begin());
            return;
        }
        const double h = grid_.spacing();
        const std::size_t n = u.size();
        for_each_index(n, Exec::parallel, [&](std::size_t i) {
            const bool back = i == n - 1 || (i > 0 && u[i] > 0.0);
            ux_[i] = back ? (u[i] - u[i - 1]) / h : (u[i + 1] - u[i]) / h;
        });
    }

private:
    const GridFunction& grid_;
    double coeff_;
    SpatialScheme scheme_;
    std::vector<double> ux_, sq_;
};

}  // namespace

NonlocalSolution integrate_nonlocal(const GridFunction& u0, const Exponent& r, double t_end,
                                    const IntegratorConfig& cfg) {
    if (!u0.domain().is_line()) throw Error(ErrorKind::unsupported, "integrate_nonlocal needs a line window");
    if (std::abs(u0[0]) > kDecayTol) {
        throw Error(ErrorKind::invalid_input, "initial velocity does not decay at the left edge");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::invalid_input, "t_end must be >= 0");
    if (!(cfg.dt > 0.0) || !(cfg.cfl > 0.0)) throw Error(ErrorKind::config, "dt and cfl must be positive");
    const double t_star = blowup_time(u0, r);
    if (t_end > 0.9 * t_star) {
        std::ostringstream msg;
        msg << "t_end = " << t_end << " exceeds 0.9 of the blow-up time " << t_star;
        throw BlowUpError(t_star, msg.str());
    }
    const double h = u0.spacing();
    const double umax = max_abs(u0.values());
    if (umax > 0.0 && cfg.dt > cfg.cfl * h / umax) {
        std::ostringstream msg;
        msg << "dt = " << cfg.dt << " violates the CFL bound " << cfg.cfl * h / umax;
        throw Error(ErrorKind::config, msg.str());
    }

    const double coeff = r.is_infinite() ? 1.0 : 1.0 - 1.0 / r.r();
    NonlocalRhs rhs(u0, coeff, cfg.spatial);
    const std::size_t n = u0.size();
    const auto steps = t_end == 0.0 ? std::size_t{0} : static_cast<std::size_t>(std::ceil(t_end / cfg.dt - 1e-9));
    const double dt = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

    NonlocalSolution sol;
    std::vector<double> u(u0.values().begin(), u0.values().end());
    std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);
    sol.times.push_back(0.0);
    sol.velocities.push_back(u0);

    for (std::size_t s = 1; s <= steps; ++s) {
        rhs(u, k1);
        for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dt * k1[i];
        rhs(stage, k2);
        for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dt * k2[i];
        rhs(stage, k3);
        for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] + dt * k3[i];
        rhs(stage, k4);
        for (std::size_t i = 0; i < n; ++i) u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        sol.steps = s;

        const double t = s == steps ? t_end : dt * static_cast<double>(s);
        rhs.slope(u);
        const double gradient = max_abs(rhs.last_slope());
        const bool blown = !std::isfinite(gradient) || gradient > 1.0 / kBoundaryTol;
        const bool keep = s == steps || blown || (cfg.save_every > 0 && s % cfg.save_every == 0);
        if (keep) {
            sol.times.push_back(t);
            sol.velocities.push_back(u0.with_values(u));
        }
        if (blown) {
            std::ostringstream msg;
            msg << "max |u_x| = " << gradient << " exceeds " << 1.0 / kBoundaryTol << " at t = " << t;
            sol.stopped_early = true;
            sol.stop_reason = msg.str();
            break;
        }
    }
    return sol;
}

GridFunction burgers_characteristics(const GridFunction& u0, double t) {
    if (!u0.domain().is_line()) throw Error(ErrorKind::unsupported, "burgers_characteristics needs a line window");
    const std::size_t n = u0.size();
    const auto slopes = derivative_fourth_order(u0);
    const double h = u0.spacing();
    double cmin = *std::min_element(slopes.begin(), slopes.end());
    for (std::size_t i = 0; i + 1 < n; ++i) cmin = std::min(cmin, (u0[i + 1] - u0[i]) / h);
    if (!(1.0 + t * cmin > 0.0)) {
        std::ostringstream msg;
        msg << "characteristics cross before t = " << t << " (shock at t = " << -1.0 / cmin << ")";
        throw BlowUpError(-1.0 / cmin, msg.str(), ErrorKind::shock);
    }
    std::vector<double> X(n), v(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
        X[i] = u0.x(i) + t * u0[i];
        v[i] = u0[i];
        s[i] = slopes[i] / (1.0 + t * slopes[i]);
    }
    const HermiteInterpolant interp(std::move(X), std::move(v), std::move(s), false);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = interp(u0.x(j));
    return u0.with_values(std::move(out));
}

}  // namespace pjflow
