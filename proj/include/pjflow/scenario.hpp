#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pjflow/exponent.hpp"
#include "pjflow/grid.hpp"

namespace pjflow {

/// One batch run. Built from a JSON object (config file with flags merged in).
///
/// Keys: command, r ("inf" allowed) | lambda, init, window [a, b], n, t_end,
/// dt, rs, t, from, to, out, spatial ("central" | "upwind"), residuals.
struct Scenario {
    std::string command;
    std::optional<Exponent> exponent;
    std::string init = "gaussian";
    double a = -8.0;
    double b = 8.0;
    std::size_t n = 1024;
    double t_end = 1.0;
    std::optional<double> dt;
    std::vector<double> rs;
    double t = 1.0;
    std::string from = "id";
    std::string to = "id";
    std::filesystem::path out = ".";
    std::string spatial = "central";
    bool residuals = false;

    static Scenario from_json(const nlohmann::json& j);
};

inline const std::vector<std::string> kCommands = {"flow", "blowup", "distance", "bvp",
                                                   "periodic", "crosscheck", "limit-sweep", "pl"};

/// Schema violations of a scenario object; empty means OK.
std::vector<std::string> check_scenario(const nlohmann::json& j);

/// Reads the file and checks it. Throws Error(io) when it cannot be read or
/// parsed.
std::vector<std::string> validate_config(const std::filesystem::path& path);

nlohmann::json load_config(const std::filesystem::path& path);

/// Initial velocity from a spec: gaussian[:c,w,a] | hat:b0,b1,b2,a |
/// sine[:k,a] | file:PATH. slopes is filled when the spec has a closed-form
/// derivative.
GridFunction make_initial(const std::string& spec, const Domain& domain, std::size_t n,
                          std::optional<GridFunction>* slopes = nullptr);

/// Exit codes of run().
enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitBlowUp = 3, kExitNumerical = 4 };

int exit_code_for(ErrorKind kind);

/// Runs the scenario, writing files into scenario.out and a one-line summary
/// to log.
int run(const Scenario& scenario, std::ostream& log);

/// log-log least-squares slope of err against r.
double fit_loglog_slope(const std::vector<double>& rs, const std::vector<double>& err);

}  // namespace pjflow
