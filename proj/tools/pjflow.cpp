#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pjflow/errors.hpp"
#include "pjflow/exec.hpp"
#include "pjflow/scenario.hpp"

using nlohmann::json;

int main(int argc, char** argv) {
    if (const char* env = std::getenv("PJFLOW_THREADS")) {
        try {
            pjflow::set_thread_limit(std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "ignoring PJFLOW_THREADS=" << env << "\n";
        }
    }

    CLI::App app{"Exact and numerical flows of the r-Hunter-Saxton / generalized Proudman-Johnson equations"};
    std::string command, config, r, init, out, rs, from, to, spatial;
    std::vector<double> window;
    double lambda = 0, t_end = 0, dt = 0, t = 0;
    std::size_t n = 0;
    bool residuals = false;

    app.add_option("command", command, "flow | blowup | distance | bvp | periodic | crosscheck | limit-sweep | pl | validate")
        ->required();
    app.add_option("--config", config, "JSON scenario file (flags override its values)");
    auto* opt_r = app.add_option("--r", r, "metric exponent (nonzero real or inf)");
    auto* opt_lambda = app.add_option("--lambda", lambda, "PJ parameter, lambda = 1/r");
    opt_r->excludes(opt_lambda);
    auto* opt_init = app.add_option("--init", init, "gaussian[:c,w,a] | hat:b0,b1,b2,a | sine[:k,a] | file:PATH");
    auto* opt_window = app.add_option("--window", window, "line window A B")->expected(2);
    auto* opt_n = app.add_option("--n", n, "grid size");
    auto* opt_t_end = app.add_option("--t-end", t_end, "final time");
    auto* opt_dt = app.add_option("--dt", dt, "time step");
    auto* opt_out = app.add_option("--out", out, "output directory");
    auto* opt_rs = app.add_option("--rs", rs, "comma-separated exponents for limit-sweep");
    auto* opt_t = app.add_option("--t", t, "evaluation time for limit-sweep");
    auto* opt_from = app.add_option("--from", from, "id | step:x0,x1,s | gauss:c,w,a");
    auto* opt_to = app.add_option("--to", to, "id | step:x0,x1,s | gauss:c,w,a");
    auto* opt_spatial = app.add_option("--spatial", spatial, "central | upwind (crosscheck)");
    app.add_flag("--residuals", residuals, "also report PDE residuals (flow)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pjflow::kExitConfig;
    }

    try {
        if (command == "validate") {
            if (config.empty()) {
                std::cerr << "validate needs --config FILE\n";
                return pjflow::kExitConfig;
            }
            const auto problems = pjflow::validate_config(config);
            if (problems.empty()) {
                std::cout << "OK\n";
                return 0;
            }
            for (const auto& p : problems) std::cout << p << "\n";
            return pjflow::kExitConfig;
        }

        json j = config.empty() ? json::object() : pjflow::load_config(config);
        j["command"] = command;
        if (*opt_r) {
            j.erase("lambda");
            j["r"] = r;
        }
        if (*opt_lambda) {
            j.erase("r");
            j["lambda"] = lambda;
        }
        if (*opt_init) j["init"] = init;
        if (*opt_window) j["window"] = window;
        if (*opt_n) j["n"] = n;
        if (*opt_t_end) j["t_end"] = t_end;
        if (*opt_dt) j["dt"] = dt;
        if (*opt_out) j["out"] = out;
        if (*opt_t) j["t"] = t;
        if (*opt_from) j["from"] = from;
        if (*opt_to) j["to"] = to;
        if (*opt_spatial) j["spatial"] = spatial;
        if (residuals) j["residuals"] = true;
        if (*opt_rs) {
            std::vector<double> values;
            std::stringstream ss(rs);
            std::string item;
            while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
            j["rs"] = values;
        }
        const auto scenario = pjflow::Scenario::from_json(j);
        return pjflow::run(scenario, std::cout);
    } catch (const pjflow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pjflow::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pjflow::kExitConfig;
    }
}
