#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pjflow/exponent.hpp"
#include "pjflow/grid.hpp"

namespace pjflow {

/// Tolerance for the left anchoring phi(a) = a of a diffeomorphism on a window.
inline constexpr double kAnchorTol = 1e-8;

/// Orientation-preserving map of a line window that tends to the identity at
/// the left edge. Holds the samples of phi and of phi_x; the derivative is
/// either supplied (closed-form flows know it exactly) or taken by central
/// differences.
class Diffeo {
public:
    static Diffeo from_samples(GridFunction phi);
    static Diffeo from_samples(GridFunction phi, std::vector<double> phi_x);
    static Diffeo identity(Domain domain, std::size_t n);

    const GridFunction& phi() const noexcept { return phi_; }
    std::span<const double> phi_x() const noexcept { return phi_x_; }
    GridFunction phi_x_grid() const { return phi_.with_values(phi_x_); }
    const Domain& domain() const noexcept { return phi_.domain(); }
    std::size_t size() const noexcept { return phi_.size(); }
    double min_phi_x() const;

private:
    Diffeo(GridFunction phi, std::vector<double> phi_x);

    GridFunction phi_;
    std::vector<double> phi_x_;
};

struct FlowParams {
    Exponent exponent;
    std::vector<double> times;  // times[0] == 0, strictly increasing

    static FlowParams uniform(Exponent exponent, double t_end, std::size_t steps);
    void validate() const;
};

struct TrajectoryDiagnostics {
    double time = 0.0;
    /// F_phi(phi_t) = ||u_x||_{L^r}; NaN when r < 1 (no Finsler structure).
    double finsler_speed = 0.0;
    double min_phi_x = 0.0;
    double max_phi_x = 0.0;
};

/// Time-indexed Lagrangian path. `rates` and `rate_x` hold phi_t and phi_tx
/// samples when the producer knows them; Eulerian reconstruction needs them.
struct Trajectory {
    FlowParams params;
    std::vector<Diffeo> diffeos;
    std::vector<std::vector<double>> rates;
    std::vector<std::vector<double>> rate_x;
    std::vector<TrajectoryDiagnostics> diagnostics;
    double blowup_time = 0.0;
    /// Only meaningful for boundary-value geodesics: false at r = 1.
    bool unique_minimizer = true;

    std::size_t size() const noexcept { return diffeos.size(); }
    bool has_rates() const noexcept { return rates.size() == diffeos.size() && !rates.empty(); }
};

/// How the closed-form Lagrangian flow is turned into samples.
///  piecewise_linear: exact flow of the piecewise-linear interpolant of u0 (cell
///    secant slopes, no quadrature error for piecewise-linear data, second
///    order for smooth data).
///  high_order: nodal slopes integrated with the fourth-order cumulative rule.
enum class FlowScheme { piecewise_linear, high_order };

struct FlowOptions {
    FlowScheme scheme = FlowScheme::piecewise_linear;
    /// Nodal samples of u0' (e.g. analytic). Defaults to derivative(u0).
    std::optional<GridFunction> slopes;
};

/// Allow the line isometry formula for 0 < r < 1 (outside the range where it
/// is an isometry).
enum class IsometryRange { finsler, extended };

GridFunction phi_map(const Diffeo& phi, double r, IsometryRange range = IsometryRange::finsler);

Diffeo phi_inverse_map(const GridFunction& f, double r,
                       QuadratureRule rule = QuadratureRule::trapezoid);

/// Grid blow-up time from slope samples: -r / min c for r > 0, |r| / max c
/// for r < 0, +inf when the relevant slopes have the wrong sign or r = inf.
double blowup_time_from_slopes(std::span<const double> slopes, const Exponent& r);

double blowup_time(const GridFunction& u0, const Exponent& r);

Trajectory exact_flow(const GridFunction& u0, const FlowParams& params, const FlowOptions& options = {});

/// Eulerian velocity u = phi_t o phi^{-1} at traj.params.times[k] on the
/// trajectory's window grid. Beyond phi(b) the map is continued affinely.
GridFunction eulerian_velocity(const Trajectory& traj, std::size_t k);

/// u_x(t, phi(t,x)) = phi_tx / phi_x on the Lagrangian grid.
GridFunction lagrangian_velocity_slope(const Trajectory& traj, std::size_t k);

/// u_x(t, .) on the window grid.
GridFunction eulerian_velocity_slope(const Trajectory& traj, std::size_t k);

struct CompletionPoint {
    double time = 0.0;
    GridFunction phi;
    std::vector<double> phi_x;
    double min_phi_x = 0.0;
    bool invertible = false;
    bool in_completion = false;
};

/// The t -> T* limit of the flow (r > 0): a nondecreasing, left-anchored map
/// whose derivative vanishes where u0' attains its infimum.
CompletionPoint continue_to_blowup(const GridFunction& u0, const Exponent& r);

/// Discrete membership in the completion monoid: nondecreasing samples and
/// phi(a) = a.
bool in_completion(const GridFunction& phi, double tol = 1e-10);

double finsler_norm(const Diffeo& phi, const GridFunction& h, double r);
double finsler_norm_from_slope(const Diffeo& phi, std::span<const double> h_x, double r);

/// E_r = T^{r-1} int_0^T int |phi_tx/phi_x|^r phi_x dx dt, with phi_tx from
/// central differences in time.
double energy(const Trajectory& traj, double r);

/// Finsler speed at each time sample, phi_tx from differences in time.
std::vector<double> finsler_speeds(const Trajectory& traj, double r);
double path_length(const Trajectory& traj, double r);

double geodesic_distance(const Diffeo& phi0, const Diffeo& phi1, double r);

/// Unique minimizing geodesic (r > 1): the straight segment between the
/// isometric images, pulled back. times must lie in [0, 1].
Trajectory bvp_geodesic(const Diffeo& phi0, const Diffeo& phi1, double r, std::vector<double> times);

/// max |d/dt v + lambda v^2| with v = phi_tx/phi_x, over interior times.
double lagrangian_residual(const Trajectory& traj, double lambda);

enum class PjForm {
    /// u_txx + (1 + 2 lambda) u_x u_xx + u u_xxx
    differentiated,
    /// u_tx + u u_xx + lambda u_x^2 (its first integral; lambda = 0 gives u_xt + u_xx u)
    first_integral,
};

double pj_residual(std::span<const double> times, std::span<const GridFunction> velocities, double lambda,
                   PjForm form = PjForm::differentiated);

/// All Eulerian velocities of a trajectory.
std::vector<GridFunction> eulerian_velocities(const Trajectory& traj);

}  // namespace pjflow
