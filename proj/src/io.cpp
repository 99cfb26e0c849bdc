#include "pjflow/io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "pjflow/errors.hpp"

namespace pjflow::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

namespace {

std::string domain_tag(const Domain& d) {
    if (d.is_circle()) return "circle";
    return "line " + format_double(d.a()) + " " + format_double(d.b());
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridFunction& f) {
    os << "# domain=" << domain_tag(f.domain()) << " n=" << f.size() << "\n";
    for (std::size_t i = 0; i < f.size(); ++i) os << format_double(f.x(i)) << "," << format_double(f[i]) << "\n";
}

GridFunction read_grid_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# domain=", 0) != 0) {
        throw Error(ErrorKind::io, "grid CSV must start with '# domain=...'");
    }
    std::istringstream hs(header.substr(9));
    std::string kind;
    hs >> kind;
    std::optional<Domain> domain;
    if (kind == "circle") {
        domain = Domain::circle();
    } else if (kind == "line") {
        double a = 0.0, b = 0.0;
        if (!(hs >> a >> b)) throw Error(ErrorKind::io, "line header needs 'line a b'");
        domain = Domain::line(a, b);
    } else {
        throw Error(ErrorKind::io, "unknown domain kind '" + kind + "'");
    }
    std::string ntag;
    hs >> ntag;
    if (ntag.rfind("n=", 0) != 0) throw Error(ErrorKind::io, "grid CSV header lacks n=<count>");
    const std::size_t n = std::stoul(ntag.substr(2));
    std::vector<double> values;
    values.reserve(n);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::io, "grid CSV row without a comma: " + line);
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (values.size() != n) {
        throw Error(ErrorKind::io, "grid CSV has " + std::to_string(values.size()) + " rows, header says " +
                                       std::to_string(n));
    }
    return GridFunction(*domain, std::move(values));
}

GridFunction read_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
    return read_grid_csv(in);
}

json grid_to_json(const GridFunction& f) {
    json d;
    if (f.domain().is_circle()) {
        d = {{"kind", "circle"}};
    } else {
        d = {{"kind", "line"}, {"a", f.domain().a()}, {"b", f.domain().b()}};
    }
    return {{"domain", d}, {"n", f.size()}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

GridFunction grid_from_json(const json& j) {
    try {
        const auto& d = j.at("domain");
        const std::string kind = d.at("kind");
        const Domain domain = kind == "circle" ? Domain::circle() : Domain::line(d.at("a"), d.at("b"));
        auto values = j.at("values").get<std::vector<double>>();
        if (values.size() != j.at("n").get<std::size_t>()) throw Error(ErrorKind::io, "n does not match values");
        return GridFunction(domain, std::move(values));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, std::string("malformed grid JSON: ") + e.what());
    }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x,phi,phi_x,u,u_x\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& d = traj.diffeos[k];
        const auto u = eulerian_velocity(traj, k);
        const auto ux = eulerian_velocity_slope(traj, k);
        const std::string t = format_double(traj.params.times[k]);
        for (std::size_t i = 0; i < d.size(); ++i) {
            os << t << "," << format_double(d.phi().x(i)) << "," << format_double(d.phi()[i]) << ","
               << format_double(d.phi_x()[i]) << "," << format_double(u[i]) << "," << format_double(ux[i]) << "\n";
        }
    }
}

json trajectory_manifest(const Trajectory& traj) {
    const auto& e = traj.params.exponent;
    json diags = json::array();
    for (const auto& d : traj.diagnostics) {
        diags.push_back({{"time", d.time},
                         {"finsler_speed", number(d.finsler_speed)},
                         {"min_phi_x", d.min_phi_x},
                         {"max_phi_x", d.max_phi_x}});
    }
    return {{"r", number(e.r())},
            {"lambda", e.lambda()},
            {"times", traj.params.times},
            {"blowup_time", number(traj.blowup_time)},
            {"diagnostics", diags}};
}

void write_periodic_csv(std::ostream& os, const PeriodicTrajectory& traj) {
    os << "t,x,phi,phi_x,u,f\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& d = traj.diffeos[k];
        const std::string t = format_double(traj.times[k]);
        for (std::size_t i = 0; i < d.size(); ++i) {
            os << t << "," << format_double(d.phi().x(i)) << "," << format_double(d.phi()[i]) << ","
               << format_double(d.phi_x()[i]) << "," << format_double(traj.velocities[k][i]) << ","
               << format_double(traj.sphere[k][i]) << "\n";
        }
    }
}

json periodic_manifest(const PeriodicTrajectory& traj) {
    json diags = json::array();
    for (const auto& d : traj.diagnostics) {
        diags.push_back({{"time", d.time},
                         {"min_f", d.min_f},
                         {"constraint_error", d.constraint_error},
                         {"sphere_speed", d.sphere_speed}});
    }
    return {{"r", traj.r},
            {"lambda", 1.0 / traj.r},
            {"times", traj.times},
            {"steps", traj.steps},
            {"max_constraint_drift", traj.max_constraint_drift},
            {"diagnostics", diags}};
}

void write_solution_csv(std::ostream& os, const NonlocalSolution& sol) {
    os << "t,x,u\n";
    for (std::size_t k = 0; k < sol.times.size(); ++k) {
        const auto& u = sol.velocities[k];
        const std::string t = format_double(sol.times[k]);
        for (std::size_t i = 0; i < u.size(); ++i) {
            os << t << "," << format_double(u.x(i)) << "," << format_double(u[i]) << "\n";
        }
    }
}

json pl_to_json(const PiecewiseLinearFn& p, const Exponent& r, double t) {
    return {{"breakpoints", p.breakpoints()},
            {"node_values", p.node_values()},
            {"r", number(r.r())},
            {"t", t}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
    out << contents;
    if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace pjflow::io
