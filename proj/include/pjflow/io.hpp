#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pjflow/crosscheck.hpp"
#include "pjflow/exponent.hpp"
#include "pjflow/grid.hpp"
#include "pjflow/nonperiodic.hpp"
#include "pjflow/periodic.hpp"
#include "pjflow/piecewise_linear.hpp"

namespace pjflow::io {

using nlohmann::json;

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);

/// CSV: header "# domain=<line a b|circle> n=<n>", then "x,value" rows.
void write_grid_csv(std::ostream& os, const GridFunction& f);
GridFunction read_grid_csv(std::istream& is);
GridFunction read_grid_csv(const std::filesystem::path& path);

json grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const json& j);

/// Rows t,x,phi,phi_x,u,u_x: phi and phi_x at label x, u and u_x at the
/// Eulerian point x.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
json trajectory_manifest(const Trajectory& traj);

/// Rows t,x,phi,phi_x,u,f.
void write_periodic_csv(std::ostream& os, const PeriodicTrajectory& traj);
json periodic_manifest(const PeriodicTrajectory& traj);

/// Rows t,x,u.
void write_solution_csv(std::ostream& os, const NonlocalSolution& sol);

json pl_to_json(const PiecewiseLinearFn& p, const Exponent& r, double t);

/// Non-finite doubles as the strings "inf"/"-inf"/"nan" (JSON has no literal).
json number(double v);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace pjflow::io
