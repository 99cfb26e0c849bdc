#include "pjflow/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "pjflow/errors.hpp"
#include "pjflow/kernels.hpp"

namespace pjflow {

namespace {

void require_circle(const GridFunction& f, const char* what) {
    if (!f.domain().is_circle()) throw Error(ErrorKind::unsupported, std::string(what) + " needs a circle grid");
}

void require_r(double r, double lo, const char* what) {
    if (!(r >= lo) || !std::isfinite(r)) {
        std::ostringstream msg;
        msg << what << " requires finite r >= " << lo;
        throw Error(ErrorKind::invalid_input, msg.str());
    }
}

double circle_sum(std::span<const double> v, double h) {
    double s = 0.0;
    for (double x : v) s += x;
    return h * s;
}

}  // namespace

// ---------------------------------------------------------------------------
// PeriodicDiffeo / SphereFn

PeriodicDiffeo::PeriodicDiffeo(GridFunction phi, std::vector<double> phi_x)
    : phi_(std::move(phi)), phi_x_(std::move(phi_x)) {
    require_circle(phi_, "PeriodicDiffeo");
    if (phi_x_.size() != phi_.size()) throw Error(ErrorKind::domain_mismatch, "phi_x must match phi samples");
    if (phi_[0] != 0.0) throw Error(ErrorKind::invalid_input, "periodic diffeomorphism must fix 0");
    for (std::size_t i = 0; i < phi_.size(); ++i) {
        const double next = i + 1 < phi_.size() ? phi_[i + 1] : 1.0;
        if (!(next > phi_[i])) {
            std::ostringstream msg;
            msg << "periodic lift not strictly increasing at index " << i;
            throw MonotonicityError(i, msg.str());
        }
        if (!(phi_x_[i] > 0.0) || !std::isfinite(phi_x_[i])) {
            std::ostringstream msg;
            msg << "phi_x not strictly positive at index " << i;
            throw MonotonicityError(i, msg.str());
        }
    }
}

PeriodicDiffeo PeriodicDiffeo::from_samples(GridFunction phi) {
    require_circle(phi, "PeriodicDiffeo");
    std::vector<double> disp(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) disp[i] = phi[i] - phi.x(i);
    const auto d = derivative(phi.with_values(std::move(disp)));
    std::vector<double> phi_x(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi_x[i] = 1.0 + d[i];
    return PeriodicDiffeo(std::move(phi), std::move(phi_x));
}

PeriodicDiffeo PeriodicDiffeo::from_samples(GridFunction phi, std::vector<double> phi_x) {
    return PeriodicDiffeo(std::move(phi), std::move(phi_x));
}

PeriodicDiffeo PeriodicDiffeo::identity(std::size_t n) {
    return PeriodicDiffeo(GridFunction::sample(Domain::circle(), n, [](double x) { return x; }),
                          std::vector<double>(n, 1.0));
}

SphereFn::SphereFn(GridFunction f, double r, double tol) : f_(std::move(f)), r_(r) {
    require_circle(f_, "SphereFn");
    require_r(r_, 1.0, "SphereFn");
    if (tol < 0.0) tol = kSphereRelTol * r_;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (!(f_[i] > 0.0)) {
            std::ostringstream msg;
            msg << "sphere sample f(x_" << i << ") = " << f_[i] << " is not positive";
            throw Error(ErrorKind::out_of_image, msg.str());
        }
    }
    const double err = constraint_error();
    if (!(std::abs(err) <= tol)) {
        std::ostringstream msg;
        msg << "||f||_r = " << r_ + err << " misses the sphere radius " << r_;
        throw Error(ErrorKind::off_sphere, msg.str());
    }
}

double SphereFn::constraint_error() const { return lp_norm(f_, r_) - r_; }

// ---------------------------------------------------------------------------
// Isometry

SphereFn phi_map_periodic(const PeriodicDiffeo& phi, double r) {
    require_r(r, 1.0, "phi_map_periodic");
    std::vector<double> f(phi.size());
    kernels::isometry_circle(phi.phi_x(), r, f, Exec::parallel);
    return SphereFn(phi.phi().with_values(std::move(f)), r);
}

PeriodicDiffeo phi_inverse_periodic(const SphereFn& s) {
    const double r = s.r();
    const auto& f = s.f();
    std::vector<double> g(f.size());
    for_each_index(f.size(), Exec::parallel, [&](std::size_t i) { g[i] = std::pow(f[i] / r, r); });
    const auto cum = cumulative_integral_periodic(f.with_values(g), QuadratureRule::simpson);
    const double total = cum.back();
    std::vector<double> phi(f.size()), phi_x(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        phi[i] = cum[i] / total;
        phi_x[i] = g[i] / total;
    }
    return PeriodicDiffeo::from_samples(f.with_values(std::move(phi)), std::move(phi_x));
}

GridFunction sphere_tangent_project(const SphereFn& s, const GridFunction& g) {
    const auto& f = s.f();
    if (!f.same_grid(g)) throw Error(ErrorKind::domain_mismatch, "tangent vector lives on another grid");
    const std::size_t n = f.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(f[i], s.r() - 1.0);
    double wg = 0.0, ww = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        wg += w[i] * g[i];
        ww += w[i] * w[i];
    }
    const double c = wg / ww;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = g[i] - c * w[i];
    return g.with_values(std::move(out));
}

double finsler_norm_periodic(const PeriodicDiffeo& phi, std::span<const double> h_x, double r) {
    require_r(r, 1.0, "finsler_norm_periodic");
    if (h_x.size() != phi.size()) throw Error(ErrorKind::domain_mismatch, "tangent samples must match the grid");
    std::vector<double> w(h_x.size());
    kernels::finsler_integrand(phi.phi_x(), h_x, r, w, Exec::parallel);
    return std::pow(circle_sum(w, phi.phi().spacing()), 1.0 / r);
}

// ---------------------------------------------------------------------------
// Sphere geodesics

namespace {

// Root of a nonincreasing scalar function, bracketed outward from 0.
template <class Fn>
double monotone_root(Fn&& fn) {
    const double f0 = fn(0.0);
    if (f0 == 0.0) return 0.0;
    const double dir = f0 > 0.0 ? 1.0 : -1.0;
    double lo = 0.0, flo = f0, step = 1e-8;
    for (int k = 0; k < 200; ++k, step *= 4.0) {
        const double hi = dir * step;
        const double fhi = fn(hi);
        if ((fhi <= 0.0) == (f0 > 0.0)) {
            double a = lo, b = hi, fa = flo, fb = fhi;
            if (a > b) {
                std::swap(a, b);
                std::swap(fa, fb);
            }
            if (fa == 0.0) return a;
            if (fb == 0.0) return b;
            std::uintmax_t iters = 200;
            const auto [x0, x1] = boost::math::tools::toms748_solve(
                fn, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
            return 0.5 * (x0 + x1);
        }
        lo = hi;
        flo = fhi;
    }
    throw Error(ErrorKind::invalid_input, "constraint multiplier could not be bracketed");
}

class SphereStepper {
public:
    SphereStepper(double r, std::size_t n, double h) : r_(r), q1_(1.0 / (r - 1.0)), h_(h), tmp_(n), w_(n) {}

    // dT/dp = sign(p) |p|^{q-1}
    double grad_t(double p) const {
        if (r_ == 2.0) return p;
        return std::copysign(std::pow(std::abs(p), q1_), p);
    }
    double momentum(double v) const {
        if (r_ == 2.0) return v;
        return std::copysign(std::pow(std::abs(v), r_ - 1.0), v);
    }

    void constraint_gradient(const std::vector<double>& f, std::vector<double>& w) const {
        for (std::size_t i = 0; i < f.size(); ++i) w[i] = r_ * std::pow(std::max(f[i], 0.0), r_ - 1.0);
    }

    double constraint(const std::vector<double>& f) const {
        double s = 0.0;
        for (double x : f) {
            const double y = std::max(x, 0.0);
            s += r_ == 2.0 ? y * y : std::pow(y, r_);
        }
        return h_ * s - std::pow(r_, r_);
    }

    // One RATTLE step of size dt.
    void step(std::vector<double>& f, std::vector<double>& p, double dt) {
        const std::size_t n = f.size();
        constraint_gradient(f, w_);
        const auto position = [&](double mu) {
            for (std::size_t i = 0; i < n; ++i) tmp_[i] = f[i] + dt * grad_t(p[i] - 0.5 * dt * mu * w_[i]);
            return constraint(tmp_);
        };
        const double mu = monotone_root(position);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] -= 0.5 * dt * mu * w_[i];
            f[i] += dt * grad_t(p[i]);
        }
        constraint_gradient(f, w_);
        const auto tangency = [&](double nu) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += w_[i] * grad_t(p[i] - 0.5 * dt * nu * w_[i]);
            return h_ * s;
        };
        const double nu = monotone_root(tangency);
        for (std::size_t i = 0; i < n; ++i) p[i] -= 0.5 * dt * nu * w_[i];
    }

private:
    double r_, q1_, h_;
    std::vector<double> tmp_, w_;
};

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

GridFunction eulerian_from_sphere(const GridFunction& f, const std::vector<double>& ft, double r,
                                  const PeriodicDiffeo& phi) {
    const std::size_t n = f.size();
    // phi_tx = r^{1-r} f^{r-1} f_t, scaled like the renormalized phi.
    std::vector<double> g(n), rate_x(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::pow(f[i] / r, r);
    const double total = cumulative_integral_periodic(f.with_values(g), QuadratureRule::simpson).back();
    for (std::size_t i = 0; i < n; ++i) rate_x[i] = std::pow(f[i] / r, r - 1.0) * ft[i] / total;
    const auto rate = cumulative_integral_periodic(f.with_values(rate_x), QuadratureRule::simpson);

    std::vector<double> pnodes(n + 1), labels(n + 1), inv_slopes(n + 1);
    std::vector<double> lnodes(n + 1), rvals(n + 1), rslopes(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t j = i % n;
        pnodes[i] = i < n ? phi.phi()[i] : 1.0;
        labels[i] = i < n ? f.x(i) : 1.0;
        inv_slopes[i] = 1.0 / phi.phi_x()[j];
        lnodes[i] = labels[i];
        rvals[i] = rate[i];
        rslopes[i] = rate_x[j];
    }
    const HermiteInterpolant inverse(std::move(pnodes), std::move(labels), std::move(inv_slopes), true);
    const HermiteInterpolant phi_t(std::move(lnodes), std::move(rvals), std::move(rslopes), false);
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = phi_t(inverse(f.x(j)));
    return f.with_values(std::move(u));
}

}  // namespace

PeriodicTrajectory periodic_geodesic(const GridFunction& u0, double r, const std::vector<double>& times,
                                     double dt) {
    require_circle(u0, "periodic_geodesic");
    if (!(r > 1.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_input, "periodic_geodesic requires 1 < r < inf");
    if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "dt must be positive");
    if (std::abs(u0[0]) > kDecayTol) throw Error(ErrorKind::invalid_input, "periodic velocity must satisfy u0(0) = 0");
    if (times.empty() || times[0] != 0.0) throw Error(ErrorKind::invalid_input, "times must start at 0");
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        if (!(times[k + 1] > times[k])) throw Error(ErrorKind::invalid_input, "times must be strictly increasing");
    }

    const std::size_t n = u0.size();
    const double h = u0.spacing();
    std::vector<double> f(n, r), p(n);
    {
        const SphereFn start(u0.with_values(f), r);
        const auto v0 = sphere_tangent_project(start, u0.with_values(derivative_fourth_order(u0)));
        SphereStepper tmp(r, n, h);
        for (std::size_t i = 0; i < n; ++i) p[i] = tmp.momentum(v0[i]);
    }
    SphereStepper stepper(r, n, h);

    PeriodicTrajectory traj;
    traj.r = r;
    auto record = [&](double t) {
        std::vector<double> ft(n);
        for (std::size_t i = 0; i < n; ++i) ft[i] = stepper.grad_t(p[i]);
        SphereFn s(u0.with_values(f), r);
        auto phi = phi_inverse_periodic(s);
        PeriodicDiagnostics d;
        d.time = t;
        d.min_f = min_of(f);
        d.constraint_error = s.constraint_error();
        d.sphere_speed = lp_norm(u0.with_values(ft), r);
        traj.velocities.push_back(eulerian_from_sphere(s.f(), ft, r, phi));
        traj.diffeos.push_back(std::move(phi));
        traj.sphere.push_back(s.f());
        traj.times.push_back(t);
        traj.diagnostics.push_back(d);
    };

    record(0.0);
    double t = 0.0;
    double prev_min = min_of(f);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double span = times[k + 1] - times[k];
        const auto steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
        const double step = span / static_cast<double>(steps);
        for (std::size_t s = 0; s < steps; ++s) {
            stepper.step(f, p, step);
            ++traj.steps;
            t = times[k] + step * static_cast<double>(s + 1);
            const double m = min_of(f);
            if (m < kBoundaryTol) {
                const double hit = prev_min > m ? t - step + step * prev_min / (prev_min - m) : t;
                std::ostringstream msg;
                msg << "sphere geodesic reaches the boundary f = 0 near t = " << hit;
                throw BlowUpError(hit, msg.str(), ErrorKind::boundary);
            }
            prev_min = m;
            traj.max_constraint_drift =
                std::max(traj.max_constraint_drift, std::abs(lp_norm(u0.with_values(f), r) - r));
        }
        record(times[k + 1]);
    }
    return traj;
}

GridFunction great_circle_r2(const SphereFn& f0, const GridFunction& g0, double t) {
    if (f0.r() != 2.0) throw Error(ErrorKind::invalid_input, "great circles are the r = 2 geodesics");
    const auto& f = f0.f();
    if (!f.same_grid(g0)) throw Error(ErrorKind::domain_mismatch, "tangent vector lives on another grid");
    const double h = f.spacing();
    double fg = 0.0, gg = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        fg += f[i] * g0[i];
        gg += g0[i] * g0[i];
    }
    const double speed = std::sqrt(h * gg);
    if (speed == 0.0) return f;
    if (std::abs(h * fg) > 1e-10 * 2.0 * speed) {
        throw Error(ErrorKind::tangency, "initial velocity is not tangent to the sphere");
    }
    const double c = std::cos(0.5 * speed * t), s = std::sin(0.5 * speed * t);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = c * f[i] + 2.0 * s * g0[i] / speed;
    return f.with_values(std::move(out));
}

}  // namespace pjflow
