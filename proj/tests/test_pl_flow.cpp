#include <doctest.h>

#include <cmath>

#include "pjflow/errors.hpp"
#include "pjflow/nonperiodic.hpp"
#include "pjflow/pl_flow.hpp"

using namespace pjflow;

namespace {
PLState hat(double r) { return PLState(PiecewiseLinearFn::line({0, 1, 2}, {0, 1, 0}), Exponent::from_r(r)); }
}  // namespace

TEST_SUITE("pl_flow") {

TEST_CASE("state validation") {
    CHECK_THROWS_AS(PLState(PiecewiseLinearFn::line({0, 1}, {1, 0}), Exponent::from_r(2)), Error);
    CHECK_THROWS_AS(PLState(PiecewiseLinearFn::line({0, 1}, {0, 1}, 0.0, 1.0), Exponent::from_r(2)), Error);
    CHECK_THROWS_AS(PLState(PiecewiseLinearFn::circle({0, 0.5}, {0, 1}), Exponent::from_r(2)), Error);
}

TEST_CASE("zero velocity gives the identity") {
    const PLState s(PiecewiseLinearFn::line({0, 1}, {0, 0}), Exponent::from_r(2));
    const auto phi = pl_exact_flow(s, 5.0);
    CHECK(phi(-3.0) == -3.0);
    CHECK(phi(0.5) == 0.5);
    CHECK(phi(7.0) == 7.0);
}

TEST_CASE("hat flow at r = 2") {
    const auto phi = pl_exact_flow(hat(2), 1.0);
    CHECK(phi.breakpoints() == std::vector<double>{0, 1, 2});
    CHECK(phi.slope(0) == 2.25);
    CHECK(phi.slope(1) == 0.25);
    CHECK(phi(2.0) == 2.5);
    CHECK(phi.left_tail_slope() == 1.0);
    CHECK(phi.right_tail_slope() == 1.0);
    try {
        pl_exact_flow(hat(2), 2.0);
        FAIL("expected blow-up");
    } catch (const BlowUpError& e) {
        CHECK(e.blowup_time() == 2.0);
    }
}

TEST_CASE("hat Eulerian velocity") {
    CHECK(pl_eulerian_velocity(hat(2), 0.0) == hat(2).velocity0());
    const auto u = pl_eulerian_velocity(hat(2), 1.0);
    CHECK(u.slope(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(u.slope(1) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(u.breakpoints() == std::vector<double>{0, 2.25, 2.5});

    const PLState inf(PiecewiseLinearFn::line({0, 1, 2}, {0, 1, 0}), Exponent::infinity());
    const auto v = pl_eulerian_velocity(inf, 3.0);
    CHECK(v.slope(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.slope(1) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(v.breakpoints()[1] == doctest::Approx(std::exp(3.0)));
}

TEST_CASE("slope energy is conserved") {
    const PLState s(PiecewiseLinearFn::line({-1, 0.3, 1, 2.5, 3}, {0, 0.8, -0.2, 0.4, 0}), Exponent::from_r(3));
    const double e0 = pl_slope_energy(s.velocity0(), s.exponent());
    for (double t : {0.3, 1.0, 0.99 * s.blowup_time()}) {
        // near T* the shortest segment has length ~ (1 - t/T*)^r, so its
        // breakpoints carry that much relative rounding
        const double tol = t < 0.9 * s.blowup_time() ? 1e-12 : 1e-8;
        CHECK(std::abs(pl_slope_energy(pl_eulerian_velocity(s, t), s.exponent()) - e0) <= tol * e0);
    }
}

TEST_CASE("sampled PL flow agrees with the grid flow") {
    const auto s = hat(2);
    const Domain d = Domain::line(-2, 4);
    const auto u0 = pl_to_grid(s.velocity0(), d, 601);
    const auto traj = exact_flow(u0, FlowParams{s.exponent(), {0.0, 1.5}});
    const auto pl = pl_to_grid(pl_exact_flow(s, 1.5), d, 601);
    CHECK(max_abs_diff(traj.diffeos[1].phi(), pl) < 1e-13);
}

}
