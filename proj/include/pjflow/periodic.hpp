#pragma once

#include <span>
#include <vector>

#include "pjflow/grid.hpp"

namespace pjflow {

/// Default sphere tolerance relative to r.
inline constexpr double kSphereRelTol = 1e-8;
/// Integration stops once min f drops below this (the image set is f > 0).
inline constexpr double kBoundaryTol = 1e-4;

/// Circle diffeomorphism fixing 0, stored as its lift on the circle grid
/// x_i = i/n: phi(0) = 0, strictly increasing, phi(x_{n-1}) < 1 (phi(1) = 1).
class PeriodicDiffeo {
public:
    /// phi_x from cyclic central differences of phi - x.
    static PeriodicDiffeo from_samples(GridFunction phi);
    static PeriodicDiffeo from_samples(GridFunction phi, std::vector<double> phi_x);
    static PeriodicDiffeo identity(std::size_t n);

    const GridFunction& phi() const noexcept { return phi_; }
    std::span<const double> phi_x() const noexcept { return phi_x_; }
    std::size_t size() const noexcept { return phi_.size(); }

private:
    PeriodicDiffeo(GridFunction phi, std::vector<double> phi_x);

    GridFunction phi_;
    std::vector<double> phi_x_;
};

/// A point of the open set {f > 0, ||f||_r = r} of the L^r-sphere.
class SphereFn {
public:
    /// Throws off_sphere when | ||f||_r - r | > tol (default kSphereRelTol * r)
    /// and out_of_image when some sample is not positive.
    SphereFn(GridFunction f, double r, double tol = -1.0);

    const GridFunction& f() const noexcept { return f_; }
    double r() const noexcept { return r_; }
    /// ||f||_r - r.
    double constraint_error() const;

private:
    GridFunction f_;
    double r_;
};

/// f = r phi_x^{1/r}. Requires r >= 1.
SphereFn phi_map_periodic(const PeriodicDiffeo& phi, double r);

/// phi = r^{-r} int_0^x f^r, renormalized so that phi(1) = 1.
PeriodicDiffeo phi_inverse_periodic(const SphereFn& f);

/// g minus its component along f^{r-1}, so that int f^{r-1} g = 0.
GridFunction sphere_tangent_project(const SphereFn& f, const GridFunction& g);

/// (int phi_x^{1-r} |h_x|^r)^{1/r} for a tangent vector with slope samples h_x.
double finsler_norm_periodic(const PeriodicDiffeo& phi, std::span<const double> h_x, double r);

struct PeriodicDiagnostics {
    double time = 0.0;
    double min_f = 0.0;
    /// ||f||_r - r at this output time.
    double constraint_error = 0.0;
    /// ||f_t||_r (constant along exact geodesics).
    double sphere_speed = 0.0;
};

struct PeriodicTrajectory {
    double r = 2.0;
    std::vector<double> times;
    std::vector<GridFunction> sphere;
    std::vector<PeriodicDiffeo> diffeos;
    std::vector<GridFunction> velocities;
    std::vector<PeriodicDiagnostics> diagnostics;
    /// Largest | ||f||_r - r | over every integration step.
    double max_constraint_drift = 0.0;
    std::size_t steps = 0;

    std::size_t size() const noexcept { return times.size(); }
};

/// Constrained geodesic on the discrete L^r-sphere starting at f = r (the
/// identity) with velocity u0'. Symplectic RATTLE stepping of the Hamiltonian
/// (1/q) int |p|^q, q = r/(r-1), with the sphere constraint enforced by scalar
/// multipliers at every step. Throws BlowUpError (kind boundary) carrying a
/// hitting-time estimate when min f falls below kBoundaryTol.
PeriodicTrajectory periodic_geodesic(const GridFunction& u0, double r, const std::vector<double>& times,
                                     double dt);

/// Great circle of the L^2-sphere of radius 2 through f0 with velocity g0.
GridFunction great_circle_r2(const SphereFn& f0, const GridFunction& g0, double t);

}  // namespace pjflow
