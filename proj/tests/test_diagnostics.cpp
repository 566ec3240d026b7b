#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hmcf/diagnostics.hpp"
#include "hmcf/harness.hpp"
#include "hmcf/spectral.hpp"
#include "helpers.hpp"

using namespace hmcf;
using hmcf::test::circle;
using hmcf::test::star;

namespace {

SimConfig standard_config() {
    SimConfig cfg;
    cfg.rho = std::numbers::pi;
    cfg.potential = PotentialSpec::zero_eta();
    cfg.grid_size = 64;
    cfg.horizon = 1.0;
    cfg.dt = 1e-3;
    return cfg;
}

} // namespace

TEST_CASE("energy breakdown at the equilibrium circle") {
    SimConfig cfg = standard_config();
    cfg.vol0 = std::numbers::pi;
    const auto model = ForceModel::from(cfg);
    const auto st = make_state(0.0, circle(64, 1.0), VecField(64), model);
    const auto e = total_energy(st, cfg);
    CHECK(e.kinetic == 0.0);
    CHECK(e.potential_integral == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(e.pressure_term == doctest::Approx(0.0));
    CHECK(e.e_ham == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(e.e_paper == doctest::Approx(-2.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("momenta of reference states") {
    SimConfig cfg = standard_config();
    const auto model = ForceModel::from(cfg);

    SUBCASE("rest state has zero momenta") {
        const auto st = make_state(0.0, star(64, 1.0, 0.1, 4), VecField(64), model);
        CHECK(momentum(st, KillingField::TranslationX) == 0.0);
        CHECK(momentum(st, KillingField::TranslationY) == 0.0);
        CHECK(momentum(st, KillingField::Rotation) == 0.0);
        CHECK(interior_momentum(st) == 0.0);
    }
    SUBCASE("rigid translation on the unit-circle reference") {
        const double c = 0.37;
        VecField v(64, Vec2{c, 0.0});
        const auto st = make_state(0.0, circle(64, 1.0), std::move(v), model);
        CHECK(momentum(st, KillingField::TranslationX) ==
              doctest::Approx(c * 2.0 * std::numbers::pi).epsilon(1e-12));
        CHECK(momentum(st, KillingField::TranslationY) == doctest::Approx(0.0));
    }
    SUBCASE("radial breathing has zero rotation momentum") {
        const auto F = circle(64, 1.3);
        VecField v(64);
        for (std::size_t j = 0; j < 64; ++j) v[j] = 0.2 * (1.0 / 1.3) * F.positions[j];
        const auto st = make_state(0.0, F, std::move(v), model);
        CHECK(std::fabs(momentum(st, KillingField::Rotation)) < 1e-14);
    }
    SUBCASE("interior momentum of a tangential profile") {
        // velocity with <V, dF/dtheta> == constant: V = const * tau / g
        const auto F = star(64, 1.0, 0.05, 8);
        const auto b = geometry_of(F);
        const double c = 0.81;
        VecField v(64);
        for (std::size_t j = 0; j < 64; ++j) v[j] = (c / b.metric[j]) * b.tangent[j];
        const auto st = make_state(0.0, F, std::move(v), model);
        CHECK(interior_momentum(st, 1.0) ==
              doctest::Approx(c * 2.0 * std::numbers::pi).epsilon(1e-12));
    }
}

TEST_CASE("conservation along a generic run") {
    SimConfig cfg = standard_config();
    const auto F = star(64, 1.0, 0.05, 10);
    VecField v(64, Vec2{0.02, -0.01});
    for (std::size_t j = 0; j < 64; ++j)
        v[j] += 0.03 * Vec2{-F.positions[j].y, F.positions[j].x};
    const auto traj = simulate(cfg, make_state(0.0, F, std::move(v), ForceModel::from(cfg)));
    REQUIRE(traj.completed);
    const auto rep = conservation_report(traj, cfg);

    CHECK(rep.conserved_energy == "hamiltonian");
    CHECK(rep.relative_drift_e_ham() <= 1e-6);
    // The paper-convention energy differs by 2 (int v - pressure term), which
    // moves along this run; only one convention is conserved.
    CHECK(rep.relative_drift_e_paper() > 10.0 * rep.relative_drift_e_ham());
    CHECK(rep.drift_m_x() <= 1e-10);
    CHECK(rep.drift_m_y() <= 1e-10);
    CHECK(rep.drift_m_rot() <= 1e-10);
    CHECK(rep.drift_q_y() <= 1e-10);

    const auto bound = volume_bounds(rep, cfg);
    CHECK(bound.pass);
    CHECK(bound.worst_margin > 0.0);
}

TEST_CASE("rotation momentum is conserved with a radial potential") {
    SimConfig cfg = standard_config();
    cfg.potential = PotentialSpec::gaussian(0.5);
    cfg.rho = 2.0;
    const auto F = star(64, 1.0, 0.04, 19);
    VecField v(64);
    for (std::size_t j = 0; j < 64; ++j)
        v[j] = 0.05 * Vec2{-F.positions[j].y, F.positions[j].x};
    const auto traj = simulate(cfg, make_state(0.0, F, std::move(v), ForceModel::from(cfg)));
    REQUIRE(traj.completed);
    const auto rep = conservation_report(traj, cfg);
    CHECK(rep.conserved_energy == "hamiltonian");
    CHECK(rep.relative_drift_e_ham() <= 1e-6);
    CHECK(rep.drift_m_rot() <= 1e-10);
    CHECK(rep.drift_q_y() <= 1e-10);
}

TEST_CASE("energy drift scales at second order in dt") {
    SimConfig cfg = standard_config();
    auto drift_at = [&](double dt) {
        SimConfig c = cfg;
        c.dt = dt;
        const auto F = star(64, 1.0, 0.05, 10);
        VecField v(64, Vec2{0.02, -0.01});
        const auto traj = simulate(c, make_state(0.0, F, std::move(v), ForceModel::from(c)));
        return conservation_report(traj, c).relative_drift_e_ham();
    };
    const double d1 = drift_at(1e-3);
    const double d2 = drift_at(5e-4);
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("volume lower bound margins shrink with initial energy") {
    SimConfig cfg = standard_config();
    double prev_margin = std::numeric_limits<double>::infinity();
    for (double kick : {0.0, 0.15, 0.3}) {
        const auto F = circle(64, 1.0);
        VecField v(64);
        for (std::size_t j = 0; j < 64; ++j) v[j] = -kick * F.positions[j];
        const auto traj = simulate(cfg, make_state(0.0, F, std::move(v), ForceModel::from(cfg)));
        REQUIRE(traj.completed);
        const auto rep = conservation_report(traj, cfg);
        const auto bound = volume_bounds(rep, cfg);
        CHECK(bound.pass);
        CHECK(bound.worst_margin < prev_margin);
        prev_margin = bound.worst_margin;
    }
}
