#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pjflow/errors.hpp"
#include "pjflow/scenario.hpp"

using namespace pjflow;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("pjflow_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_json(json j, const fs::path& out) {
    j["out"] = out.string();
    std::ostringstream log;
    return run(Scenario::from_json(j), log);
}

bool mentions(const std::vector<std::string>& v, const std::string& what) {
    for (const auto& s : v) {
        if (s.find(what) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("schema checks") {
    CHECK(mentions(check_scenario({{"command", "flow"}, {"r", 2}, {"lambda", 0.5}}), "exactly one"));
    CHECK(mentions(check_scenario({{"command", "flow"}}), "exactly one"));
    CHECK(mentions(check_scenario({{"command", "flow"}, {"r", 0}}), "nonzero"));
    CHECK(mentions(check_scenario({{"command", "fly"}, {"r", 2}}), "unknown command"));
    CHECK(mentions(check_scenario({{"command", "flow"}, {"r", 2}, {"n", 2}}), "n must"));
    CHECK(check_scenario({{"command", "flow"}, {"r", "inf"}}).empty());
    CHECK(check_scenario({{"command", "limit-sweep"}}).empty());
    CHECK_THROWS_AS(Scenario::from_json({{"command", "flow"}, {"r", 0}}), Error);
}

TEST_CASE("validate_config reads files") {
    const auto dir = scratch("validate");
    std::ofstream(dir / "ok.json") << R"({"command": "flow", "r": 2, "init": "gaussian", "t_end": 1})";
    std::ofstream(dir / "both.json") << R"({"command": "flow", "r": 2, "lambda": 0.5})";
    CHECK(validate_config(dir / "ok.json").empty());
    CHECK(mentions(validate_config(dir / "both.json"), "exactly one"));
    try {
        validate_config(dir / "missing.json");
        FAIL("expected an I/O error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io);
    }
}

TEST_CASE("flow output is deterministic and r/lambda dual") {
    const auto dir = scratch("determinism");
    const json base = {{"command", "flow"}, {"init", "gaussian"}, {"n", 256}, {"t_end", 1.0}, {"dt", 0.1}};
    json a = base, b = base, c = base;
    a["r"] = 2;
    b["r"] = 2;
    c["lambda"] = 0.5;
    CHECK(run_json(a, dir / "a") == 0);
    CHECK(run_json(b, dir / "b") == 0);
    CHECK(run_json(c, dir / "c") == 0);
    const auto ta = slurp(dir / "a" / "trajectory.csv");
    CHECK(ta.size() > 1000);
    CHECK(ta == slurp(dir / "b" / "trajectory.csv"));
    CHECK(ta == slurp(dir / "c" / "trajectory.csv"));
    CHECK(slurp(dir / "a" / "manifest.json") == slurp(dir / "c" / "manifest.json"));
}

TEST_CASE("blowup reports T* of the hat") {
    const auto dir = scratch("blowup");
    CHECK(run_json({{"command", "blowup"}, {"r", 2}, {"init", "hat:0,1,2,1"}, {"window", {-2, 6}}, {"n", 1025}}, dir) == 0);
    const auto m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["blowup_time"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m["limit"]["in_completion"].get<bool>());
}

TEST_CASE("exit codes") {
    const auto dir = scratch("exits");
    CHECK(run_json({{"command", "flow"}, {"r", 2}, {"init", "hat:0,1,2,1"}, {"window", {-2, 4}}, {"t_end", 3.0}}, dir / "a") ==
          kExitBlowUp);
    const auto m = json::parse(slurp(dir / "a" / "manifest.json"));
    CHECK(m["blowup_time"].get<double>() == doctest::Approx(2.0));
    CHECK(run_json({{"command", "periodic"}, {"r", 2}, {"n", 64}, {"t_end", 3.0}, {"dt", 0.01}}, dir / "b") == kExitBlowUp);
    CHECK(run_json({{"command", "distance"}, {"r", 0.5}}, dir / "c") == kExitConfig);
    CHECK(run_json({{"command", "flow"}, {"r", 2}, {"init", "nonsense"}}, dir / "d") == kExitConfig);
    CHECK(exit_code_for(ErrorKind::monotonicity) == kExitNumerical);
    CHECK(exit_code_for(ErrorKind::off_sphere) == kExitNumerical);
}

TEST_CASE("other commands run") {
    const auto dir = scratch("commands");
    CHECK(run_json({{"command", "distance"}, {"r", 2}, {"from", "id"}, {"to", "gauss:0,1,0.5"}}, dir / "d") == 0);
    CHECK(run_json({{"command", "bvp"}, {"r", 2}, {"from", "gauss:-1,1,0.3"}, {"to", "gauss:1,1,0.5"}, {"n", 512}, {"dt", 0.05}}, dir / "b") == 0);
    const auto bvp = json::parse(slurp(dir / "b" / "manifest.json"));
    CHECK(bvp["path_length"].get<double>() == doctest::Approx(bvp["distance"].get<double>()).epsilon(1e-4));
    CHECK(run_json({{"command", "crosscheck"}, {"r", 2}, {"n", 512}, {"t_end", 0.5}, {"dt", 5e-3}}, dir / "x") == 0);
    CHECK(run_json({{"command", "pl"}, {"r", 2}, {"init", "hat:0,1,2,1"}, {"t_end", 1.5}}, dir / "p") == 0);
    CHECK(run_json({{"command", "periodic"}, {"r", 3}, {"n", 64}, {"t_end", 0.5}, {"dt", 0.01}}, dir / "q") == 0);
    CHECK(run_json({{"command", "limit-sweep"}, {"n", 512}, {"t", 1.0}}, dir / "s") == 0);
    const auto sweep = json::parse(slurp(dir / "s" / "manifest.json"));
    CHECK(sweep["slope"].get<double>() == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("log-log fit") {
    CHECK(fit_loglog_slope({1, 2, 4, 8}, {1, 0.5, 0.25, 0.125}) == doctest::Approx(-1.0));
}

}
