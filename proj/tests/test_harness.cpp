#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hmcf/harness.hpp"
#include "helpers.hpp"

using namespace hmcf;

namespace {

RunConfig standard_run_config() {
    RunConfig rc;
    rc.sim.rho = std::numbers::pi;
    rc.sim.potential = PotentialSpec::zero_eta();
    rc.sim.grid_size = 64;
    rc.sim.horizon = 1.0;
    rc.sim.dt = 1e-3;
    rc.initial.generator = "breathing-circle";
    rc.initial.radius = 1.05;
    rc.initial.radial_velocity = 0.0;
    return rc;
}

} // namespace

TEST_CASE("radial reference is stationary at the equilibrium circle") {
    const RadialParams rp{PotentialSpec::zero_eta(), std::numbers::pi, 1.0};
    const auto [r, rdot] = radial_reference(rp, 1.0, 0.0, 2.0);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(rdot) < 1e-10);
}

TEST_CASE("stability experiment") {
    RunConfig rc = standard_run_config();
    rc.sim.horizon = 0.5;
    rc.experiment.eps_list = {1e-2, 1e-3};
    rc.experiment.s_bar = 2.0;
    const auto rep = stability_experiment(rc);
    CHECK(rep.identical_data_difference == 0.0);
    REQUIRE(rep.points.size() == 2);
    for (const auto& pt : rep.points) {
        CHECK(pt.conclusive);
        CHECK(pt.diff_norm > 0.0);
    }
    CHECK(rep.ratio_spread <= 10.0);
    CHECK(rep.pass);
}

TEST_CASE("lifespan experiment survives at small eps") {
    RunConfig rc = standard_run_config();
    rc.sim.horizon = 0.25; // T of the T/sqrt(eps) horizon
    rc.initial.generator = "perturbed-circle";
    rc.initial.radius = 1.0;
    rc.initial.amplitude = 0.03;
    rc.initial.velocity_amplitude = 0.02;
    rc.experiment.eps_list = {0.04};
    const auto rep = lifespan_experiment(rc);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].survived);
    CHECK(rep.points[0].norm_bounded);
    CHECK(rep.points[0].horizon == doctest::Approx(0.25 / std::sqrt(0.04)));
}

TEST_CASE("conservation suite passes at the standard step sizes") {
    RunConfig rc = standard_run_config();
    rc.initial.generator = "perturbed-circle";
    rc.initial.amplitude = 0.03;
    rc.initial.seed = 2;
    rc.initial.drift_vx = 0.02;
    rc.initial.angular_velocity = 0.02;
    rc.experiment.dt_list = {1e-3, 5e-4};
    const auto rep = conservation_suite(rc);
    CHECK(rep.pass);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.energy_ratio == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("smoothing constants are stable across cutoff and grid") {
    const auto rep = smoothing_check(1);
    CHECK(rep.pass);
    REQUIRE(rep.pairs.size() == 4);
    for (const auto& p : rep.pairs) {
        CHECK(p.c_min > 0.0);
        CHECK(p.spread <= 1.5);
    }
}

TEST_CASE("convergence study") {
    RunConfig rc = standard_run_config();
    rc.experiment.dt_list = {2e-3, 1e-3};
    rc.experiment.m_list = {64, 128};
    const auto rep = convergence_study(rc);
    CHECK(rep.pass_time);
    CHECK(std::fabs(rep.fitted_time_order - 2.0) <= 0.2);
    CHECK(rep.pass_space);
    CHECK(rep.space_error_drop >= 1e2);
    CHECK(rep.pass_cross);
    CHECK(rep.cross_solver_h2 <= 1e-4);
}
