#include "pjflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "pjflow/crosscheck.hpp"
#include "pjflow/errors.hpp"
#include "pjflow/io.hpp"
#include "pjflow/nonperiodic.hpp"
#include "pjflow/periodic.hpp"
#include "pjflow/pl_flow.hpp"

namespace pjflow {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::set<std::string> kKeys = {"command", "r", "lambda", "init", "window", "n", "t_end", "dt",
                                     "rs", "t", "from", "to", "out", "spatial", "residuals"};

std::optional<double> read_r(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        try {
            std::size_t used = 0;
            const double x = std::stod(s, &used);
            if (used == s.size()) return x;
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

bool positive_number(const json& j, const char* key) { return j[key].is_number() && j[key].get<double>() > 0.0; }

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::config, "bad number '" + item + "' in " + what);
        }
    }
    return out;
}

// "name:1,2,3" -> name, {1,2,3}
std::pair<std::string, std::vector<double>> split_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, {}};
    return {spec.substr(0, colon), parse_list(spec.substr(colon + 1), spec)};
}

void need_args(const std::string& spec, const std::vector<double>& args, std::size_t count) {
    if (args.size() != count) {
        throw Error(ErrorKind::config, "'" + spec + "' takes " + std::to_string(count) + " comma-separated numbers");
    }
}

}  // namespace

std::vector<std::string> check_scenario(const json& j) {
    std::vector<std::string> v;
    if (!j.is_object()) return {"config must be a JSON object"};
    for (const auto& [key, _] : j.items()) {
        if (!kKeys.count(key)) v.push_back("unknown key '" + key + "'");
    }
    if (!j.contains("command") || !j["command"].is_string()) {
        v.push_back("command is required");
    } else if (std::find(kCommands.begin(), kCommands.end(), j["command"].get<std::string>()) == kCommands.end()) {
        v.push_back("unknown command '" + j["command"].get<std::string>() + "'");
    }
    const bool has_r = j.contains("r"), has_lambda = j.contains("lambda");
    const bool sweep = j.value("command", "") == "limit-sweep";
    if (has_r && has_lambda) {
        v.push_back("exactly one of r and lambda may be given");
    } else if (!has_r && !has_lambda && !sweep) {
        v.push_back("exactly one of r and lambda is required");
    }
    if (has_r) {
        const auto r = read_r(j["r"]);
        if (!r) {
            v.push_back("r must be a number or \"inf\"");
        } else if (*r == 0.0) {
            v.push_back("r must be nonzero");
        } else if (std::isnan(*r) || *r == -std::numeric_limits<double>::infinity()) {
            v.push_back("r must be a nonzero real or inf");
        }
    }
    if (has_lambda && !(j["lambda"].is_number() && std::isfinite(j["lambda"].get<double>()))) {
        v.push_back("lambda must be a finite number");
    }
    if (j.contains("window")) {
        const auto& w = j["window"];
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number() ||
            !(w[0].get<double>() < w[1].get<double>())) {
            v.push_back("window must be [a, b] with a < b");
        }
    }
    if (j.contains("n") && !(j["n"].is_number_integer() && j["n"].get<long long>() >= 4)) {
        v.push_back("n must be an integer >= 4");
    }
    for (const char* key : {"t_end", "dt", "t"}) {
        if (j.contains(key) && !positive_number(j, key)) v.push_back(std::string(key) + " must be positive");
    }
    if (j.contains("rs")) {
        const auto& rs = j["rs"];
        bool ok = rs.is_array() && rs.size() >= 2;
        if (ok) {
            for (const auto& x : rs) ok = ok && x.is_number() && x.get<double>() > 0.0;
        }
        if (!ok) v.push_back("rs must list at least two positive exponents");
    }
    for (const char* key : {"init", "from", "to", "out"}) {
        if (j.contains(key) && !j[key].is_string()) v.push_back(std::string(key) + " must be a string");
    }
    if (j.contains("spatial") &&
        !(j["spatial"].is_string() && (j["spatial"] == "central" || j["spatial"] == "upwind"))) {
        v.push_back("spatial must be \"central\" or \"upwind\"");
    }
    if (j.contains("residuals") && !j["residuals"].is_boolean()) v.push_back("residuals must be true or false");
    return v;
}

json load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, path.string() + ": " + e.what());
    }
}

std::vector<std::string> validate_config(const fs::path& path) { return check_scenario(load_config(path)); }

Scenario Scenario::from_json(const json& j) {
    const auto problems = check_scenario(j);
    if (!problems.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw Error(ErrorKind::config, msg);
    }
    Scenario s;
    s.command = j["command"];
    if (j.contains("r")) s.exponent = Exponent::from_r(*read_r(j["r"]));
    if (j.contains("lambda")) s.exponent = Exponent::from_lambda(j["lambda"].get<double>());
    s.init = j.value("init", s.init);
    if (j.contains("window")) {
        s.a = j["window"][0];
        s.b = j["window"][1];
    }
    s.n = j.value("n", s.n);
    s.t_end = j.value("t_end", s.t_end);
    if (j.contains("dt")) s.dt = j["dt"].get<double>();
    if (j.contains("rs")) s.rs = j["rs"].get<std::vector<double>>();
    s.t = j.value("t", s.t);
    s.from = j.value("from", s.from);
    s.to = j.value("to", s.to);
    s.out = j.value("out", std::string("."));
    s.spatial = j.value("spatial", s.spatial);
    s.residuals = j.value("residuals", false);
    return s;
}

GridFunction make_initial(const std::string& spec, const Domain& domain, std::size_t n,
                          std::optional<GridFunction>* slopes) {
    if (spec.rfind("file:", 0) == 0) {
        const fs::path path = spec.substr(5);
        if (path.extension() == ".json") {
            std::ifstream in(path);
            if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
            try {
                return io::grid_from_json(json::parse(in));
            } catch (const json::exception& e) {
                throw Error(ErrorKind::io, path.string() + ": " + e.what());
            }
        }
        return io::read_grid_csv(path);
    }
    const auto [name, args] = split_spec(spec);
    if (name == "gaussian") {
        double c = 0.0, w = 1.0, amp = 1.0;
        if (!args.empty()) {
            need_args(spec, args, 3);
            c = args[0], w = args[1], amp = args[2];
        }
        if (!(w > 0.0)) throw Error(ErrorKind::config, "gaussian width must be positive");
        if (slopes) {
            *slopes = GridFunction::sample(domain, n, [=](double x) {
                const double z = (x - c) / w;
                return -2.0 * amp * z / w * std::exp(-z * z);
            });
        }
        return GridFunction::sample(domain, n, [=](double x) {
            const double z = (x - c) / w;
            return amp * std::exp(-z * z);
        });
    }
    if (name == "hat") {
        need_args(spec, args, 4);
        if (!(args[0] < args[1] && args[1] < args[2])) throw Error(ErrorKind::config, "hat needs b0 < b1 < b2");
        const auto p = PiecewiseLinearFn::line({args[0], args[1], args[2]}, {0.0, args[3], 0.0});
        return pl_to_grid(p, domain, n);
    }
    if (name == "sine") {
        double k = 1.0, amp = 1.0 / (2.0 * std::numbers::pi);
        if (!args.empty()) {
            need_args(spec, args, 2);
            k = args[0], amp = args[1];
        }
        const double w = 2.0 * std::numbers::pi * k;
        if (slopes) *slopes = GridFunction::sample(domain, n, [=](double x) { return amp * w * std::cos(w * x); });
        return GridFunction::sample(domain, n, [=](double x) { return amp * std::sin(w * x); });
    }
    throw Error(ErrorKind::config, "unknown init spec '" + spec + "'");
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::blow_up:
        case ErrorKind::no_blow_up:
        case ErrorKind::boundary:
        case ErrorKind::shock: return kExitBlowUp;
        case ErrorKind::monotonicity:
        case ErrorKind::off_sphere:
        case ErrorKind::out_of_image:
        case ErrorKind::tangency:
        case ErrorKind::insufficient_data: return kExitNumerical;
        default: return kExitConfig;
    }
}

double fit_loglog_slope(const std::vector<double>& rs, const std::vector<double>& err) {
    const std::size_t m = rs.size();
    if (m < 2 || err.size() != m) throw Error(ErrorKind::insufficient_data, "slope fit needs two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = std::log(rs[i]), y = std::log(err[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double md = static_cast<double>(m);
    return (md * sxy - sx * sy) / (md * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Context {
    const Scenario& s;
    std::ostream& log;
    json manifest;

    Domain line() const { return Domain::line(s.a, s.b); }

    const Exponent& exponent() const {
        if (!s.exponent) throw Error(ErrorKind::config, s.command + " needs --r or --lambda");
        return *s.exponent;
    }

    void put_exponent() {
        if (!s.exponent) return;
        manifest["r"] = io::number(s.exponent->r());
        manifest["lambda"] = s.exponent->lambda();
    }

    void write(const std::string& name, const std::string& text) const { io::write_file(s.out / name, text); }
};

std::size_t step_count(double span, std::optional<double> dt, std::size_t fallback) {
    if (!dt) return fallback;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(span / *dt)));
}

// id | step:x0,x1,s (phi_x = s on [x0, x1]) | gauss:c,w,a (phi_x = 1 + a e^{-((x-c)/w)^2})
Diffeo make_diffeo(const std::string& spec, const Domain& d, std::size_t n) {
    const auto [name, args] = split_spec(spec);
    if (name == "id") return Diffeo::identity(d, n);
    if (name == "step") {
        need_args(spec, args, 3);
        const double x0 = args[0], x1 = args[1], s = args[2];
        if (!(x0 < x1) || !(s > 0.0)) throw Error(ErrorKind::config, "step needs x0 < x1 and s > 0");
        auto phi = GridFunction::sample(d, n, [=](double x) {
            return x + (s - 1.0) * (std::clamp(x, x0, x1) - x0);
        });
        std::vector<double> px(n);
        for (std::size_t i = 0; i < n; ++i) px[i] = (phi.x(i) >= x0 && phi.x(i) <= x1) ? s : 1.0;
        return Diffeo::from_samples(std::move(phi), std::move(px));
    }
    if (name == "gauss") {
        need_args(spec, args, 3);
        const double c = args[0], w = args[1], amp = args[2];
        if (!(w > 0.0) || !(amp > -1.0)) throw Error(ErrorKind::config, "gauss needs w > 0 and a > -1");
        const double k = amp * w * std::sqrt(std::numbers::pi) / 2.0;
        const double base = std::erf((d.a() - c) / w);
        auto phi = GridFunction::sample(d, n, [=](double x) { return x + k * (std::erf((x - c) / w) - base); });
        auto px = GridFunction::sample(d, n, [=](double x) {
            const double z = (x - c) / w;
            return 1.0 + amp * std::exp(-z * z);
        });
        return Diffeo::from_samples(std::move(phi), {px.values().begin(), px.values().end()});
    }
    throw Error(ErrorKind::config, "unknown diffeomorphism spec '" + spec + "'");
}

FlowOptions options_for(std::optional<GridFunction> slopes) {
    FlowOptions o;
    if (slopes) {
        o.scheme = FlowScheme::high_order;
        o.slopes = std::move(slopes);
    }
    return o;
}

double relative_drift(const std::vector<double>& values) {
    if (values.empty() || values[0] == 0.0) return 0.0;
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v - values[0]) / std::abs(values[0]));
    return m;
}

int cmd_flow(Context& c) {
    const auto& r = c.exponent();
    std::optional<GridFunction> slopes;
    const auto u0 = make_initial(c.s.init, c.line(), c.s.n, &slopes);
    c.manifest["blowup_time"] = io::number(blowup_time(u0, r));
    const auto params = FlowParams::uniform(r, c.s.t_end, step_count(c.s.t_end, c.s.dt, 100));
    const auto traj = exact_flow(u0, params, options_for(std::move(slopes)));
    c.manifest.update(io::trajectory_manifest(traj));
    std::vector<double> speeds;
    for (const auto& d : traj.diagnostics) speeds.push_back(d.finsler_speed);
    c.manifest["finsler_speed_drift"] = io::number(r.is_finsler() ? relative_drift(speeds) : NAN);
    if (c.s.residuals) {
        c.manifest["lagrangian_residual"] = lagrangian_residual(traj, r.lambda());
        const auto vel = eulerian_velocities(traj);
        c.manifest["pj_residual"] = pj_residual(params.times, vel, r.lambda());
    }
    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj);
    c.write("trajectory.csv", csv.str());
    c.log << "flow: " << traj.size() << " times, blowup_time=" << io::format_double(traj.blowup_time) << "\n";
    return kExitOk;
}

int cmd_blowup(Context& c) {
    const auto& r = c.exponent();
    const auto u0 = make_initial(c.s.init, c.line(), c.s.n);
    const auto d = derivative(u0);
    const double t_star = blowup_time(u0, r);
    const auto [lo, hi] = std::minmax_element(d.values().begin(), d.values().end());
    c.manifest["blowup_time"] = io::number(t_star);
    c.manifest["min_slope"] = *lo;
    c.manifest["max_slope"] = *hi;
    if (std::isfinite(t_star) && !r.is_infinite() && r.r() > 0.0) {
        const auto limit = continue_to_blowup(u0, r);
        c.manifest["limit"] = {{"min_phi_x", limit.min_phi_x},
                               {"invertible", limit.invertible},
                               {"in_completion", limit.in_completion}};
        std::ostringstream csv;
        csv << "x,phi,phi_x\n";
        for (std::size_t i = 0; i < limit.phi.size(); ++i) {
            csv << io::format_double(limit.phi.x(i)) << "," << io::format_double(limit.phi[i]) << ","
                << io::format_double(limit.phi_x[i]) << "\n";
        }
        c.write("limit.csv", csv.str());
    }
    c.log << "blowup_time=" << io::format_double(t_star) << "\n";
    return kExitOk;
}

int cmd_distance(Context& c) {
    const double r = c.exponent().r();
    const auto p0 = make_diffeo(c.s.from, c.line(), c.s.n);
    const auto p1 = make_diffeo(c.s.to, c.line(), c.s.n);
    const double dist = geodesic_distance(p0, p1, r);
    c.manifest["from"] = c.s.from;
    c.manifest["to"] = c.s.to;
    c.manifest["distance"] = dist;
    c.log << "distance=" << io::format_double(dist) << "\n";
    return kExitOk;
}

int cmd_bvp(Context& c) {
    const double r = c.exponent().r();
    const auto p0 = make_diffeo(c.s.from, c.line(), c.s.n);
    const auto p1 = make_diffeo(c.s.to, c.line(), c.s.n);
    const std::size_t steps = step_count(1.0, c.s.dt, 100);
    std::vector<double> times(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) times[k] = static_cast<double>(k) / static_cast<double>(steps);
    const auto traj = bvp_geodesic(p0, p1, r, times);
    c.manifest.update(io::trajectory_manifest(traj));
    const double dist = geodesic_distance(p0, p1, r);
    const double length = path_length(traj, r);
    c.manifest["distance"] = dist;
    c.manifest["path_length"] = length;
    c.manifest["unique_minimizer"] = traj.unique_minimizer;
    c.manifest["endpoint_error"] = std::max(max_abs_diff(traj.diffeos.front().phi(), p0.phi()),
                                            max_abs_diff(traj.diffeos.back().phi(), p1.phi()));
    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj);
    c.write("trajectory.csv", csv.str());
    c.log << "bvp: distance=" << io::format_double(dist) << " path_length=" << io::format_double(length) << "\n";
    return kExitOk;
}

int cmd_periodic(Context& c) {
    const double r = c.exponent().r();
    const std::string init = c.s.init == "gaussian" ? "sine" : c.s.init;
    const auto u0 = make_initial(init, Domain::circle(), c.s.n);
    const double dt = c.s.dt.value_or(1e-3);
    const std::size_t outputs = 20;
    std::vector<double> times(outputs + 1);
    for (std::size_t k = 0; k <= outputs; ++k) times[k] = c.s.t_end * static_cast<double>(k) / outputs;
    const auto traj = periodic_geodesic(u0, r, times, dt);
    c.manifest.update(io::periodic_manifest(traj));
    std::ostringstream csv;
    io::write_periodic_csv(csv, traj);
    c.write("periodic.csv", csv.str());
    c.log << "periodic: " << traj.steps << " steps, max drift " << io::format_double(traj.max_constraint_drift)
          << "\n";
    return kExitOk;
}

int cmd_crosscheck(Context& c) {
    const auto& r = c.exponent();
    std::optional<GridFunction> slopes;
    const auto u0 = make_initial(c.s.init, c.line(), c.s.n, &slopes);
    IntegratorConfig cfg;
    cfg.dt = c.s.dt.value_or(1e-3);
    cfg.spatial = c.s.spatial == "upwind" ? SpatialScheme::upwind : SpatialScheme::central;
    const auto sol = integrate_nonlocal(u0, r, c.s.t_end, cfg);
    const double t = sol.times.back();
    const auto& u = sol.velocities.back();
    c.manifest["blowup_time"] = io::number(blowup_time(u0, r));
    c.manifest["t"] = t;
    c.manifest["steps"] = sol.steps;
    c.manifest["stopped_early"] = sol.stopped_early;
    if (sol.stopped_early) c.manifest["stop_reason"] = sol.stop_reason;
    if (t > 0.0) {
        const auto traj = exact_flow(u0, FlowParams{r, {0.0, t}}, options_for(std::move(slopes)));
        c.manifest["max_error"] = max_abs_diff(u, eulerian_velocity(traj, 1));
        if (!r.is_infinite() && r.r() == 1.0) {
            c.manifest["burgers_error"] = max_abs_diff(u, burgers_characteristics(u0, t));
        }
    }
    if (r.is_finsler()) {
        const double n0 = lp_norm(derivative(u0), r.r());
        const double n1 = lp_norm(derivative(u), r.r());
        c.manifest["slope_norm_drift"] = n0 > 0.0 ? std::abs(n1 - n0) / n0 : 0.0;
    }
    std::ostringstream csv;
    io::write_solution_csv(csv, sol);
    c.write("solution.csv", csv.str());
    c.log << "crosscheck: t=" << io::format_double(t) << " max_error="
          << (c.manifest.contains("max_error") ? io::format_double(c.manifest["max_error"].get<double>()) : "0")
          << "\n";
    return sol.stopped_early ? kExitBlowUp : kExitOk;
}

int cmd_limit_sweep(Context& c) {
    std::vector<double> rs = c.s.rs;
    if (rs.empty()) rs = {2, 4, 8, 16, 32, 64, 128, 256};
    std::optional<GridFunction> slopes;
    const auto u0 = make_initial(c.s.init, c.line(), c.s.n, &slopes);
    const auto opts = options_for(std::move(slopes));
    const std::vector<double> times = {0.0, c.s.t};
    const auto limit = exact_flow(u0, FlowParams{Exponent::infinity(), times}, opts);
    std::vector<double> err(rs.size());
    std::vector<std::string> failure(rs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rs.size()); ++i) {
        try {
            const auto traj = exact_flow(u0, FlowParams{Exponent::from_r(rs[i]), times}, opts);
            err[i] = max_abs_diff(traj.diffeos[1].phi(), limit.diffeos[1].phi());
        } catch (const Error& e) {
            failure[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (!failure[i].empty()) throw BlowUpError(NAN, "r = " + io::format_double(rs[i]) + ": " + failure[i]);
    }
    std::ostringstream csv;
    csv << "r,max_diff\n";
    for (std::size_t i = 0; i < rs.size(); ++i) csv << io::format_double(rs[i]) << "," << io::format_double(err[i]) << "\n";
    c.write("sweep.csv", csv.str());
    const double slope = fit_loglog_slope(rs, err);
    c.manifest["t"] = c.s.t;
    c.manifest["rs"] = rs;
    c.manifest["max_diff"] = err;
    c.manifest["slope"] = slope;
    c.log << csv.str() << "slope=" << io::format_double(slope) << "\n";
    return kExitOk;
}

int cmd_pl(Context& c) {
    const auto& r = c.exponent();
    const auto [name, args] = split_spec(c.s.init);
    if (name != "hat") throw Error(ErrorKind::config, "pl needs a hat:b0,b1,b2,a initial velocity");
    need_args(c.s.init, args, 4);
    const PLState state(PiecewiseLinearFn::line({args[0], args[1], args[2]}, {0.0, args[3], 0.0}), r);
    c.manifest["blowup_time"] = io::number(state.blowup_time());
    const std::size_t steps = step_count(c.s.t_end, c.s.dt, 10);
    json flows = json::array(), velocities = json::array(), energy = json::array();
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = c.s.t_end * static_cast<double>(k) / static_cast<double>(steps);
        const auto u = pl_eulerian_velocity(state, t);
        flows.push_back(io::pl_to_json(pl_exact_flow(state, t), r, t));
        velocities.push_back(io::pl_to_json(u, r, t));
        energy.push_back(pl_slope_energy(u, r));
    }
    json doc = {{"flows", flows}, {"velocities", velocities}, {"slope_energy", energy}};
    c.write("pl.json", doc.dump(2) + "\n");
    c.log << "pl: " << steps + 1 << " times\n";
    return kExitOk;
}

}  // namespace

int run(const Scenario& s, std::ostream& log) {
    Context c{s, log, json::object()};
    c.manifest["command"] = s.command;
    int code = kExitOk;
    try {
        fs::create_directories(s.out);
        c.put_exponent();
        if (s.command == "flow") code = cmd_flow(c);
        else if (s.command == "blowup") code = cmd_blowup(c);
        else if (s.command == "distance") code = cmd_distance(c);
        else if (s.command == "bvp") code = cmd_bvp(c);
        else if (s.command == "periodic") code = cmd_periodic(c);
        else if (s.command == "crosscheck") code = cmd_crosscheck(c);
        else if (s.command == "limit-sweep") code = cmd_limit_sweep(c);
        else if (s.command == "pl") code = cmd_pl(c);
        else throw Error(ErrorKind::config, "unknown command '" + s.command + "'");
        c.manifest["status"] = "ok";
    } catch (const BlowUpError& e) {
        code = exit_code_for(e.kind());
        c.manifest["status"] = to_string(e.kind());
        c.manifest["blowup_time"] = io::number(e.blowup_time());
        c.manifest["message"] = e.what();
        log << "error: " << e.what() << "\n";
    } catch (const Error& e) {
        code = exit_code_for(e.kind());
        c.manifest["status"] = to_string(e.kind());
        c.manifest["message"] = e.what();
        log << "error: " << e.what() << "\n";
    } catch (const fs::filesystem_error& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        c.write("manifest.json", c.manifest.dump(2) + "\n");
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return code;
}

}  // namespace pjflow
