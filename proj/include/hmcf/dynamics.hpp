#ifndef HMCF_DYNAMICS_HPP
#define HMCF_DYNAMICS_HPP

#include <cstddef>
#include <functional>

#include "hmcf/potential.hpp"
#include "hmcf/state.hpp"

namespace hmcf {

// Physics + discretization parameters of one run.
struct SimConfig {
    double rho = 1.0;            // inner pressure strength, > 0
    double vol0 = 0.0;           // reference volume; 0 means "use Vol at t = 0"
    PotentialSpec potential;
    std::size_t grid_size = 64;  // M
    double horizon = 1.0;        // T
    double dt = 0.0;             // 0 means "choose from the CFL rule"
    double cfl_safety = 0.25;
    double epsilon = 1.0;        // amplitude parameter of rescaled runs
    bool rescaled = false;       // integrate the rescaled form instead of the
                                 // physical equation
    std::size_t sample_every = 1;
};

// The second-order force of the evolution.
//
// Physical form (the Euler-Lagrange equations of
//   (1/2) int |dF/dt|^2 dmu  -  int v(s) dmu_t  +  rho log(Vol/Vol_0),
// s = |F|^2/2):
//
//   d^2F/dt^2 = (dmu_t/dmu) [ v(s) ( -H + phi(s) <F, nu> ) + rho / Vol ] nu.
//
// Note the pressure term is NOT multiplied by v: that placement is what the
// discrete action above produces, and the finite-difference gradient oracle
// in the tests pins it down.
//
// Rescaled form: with the substitution  F_phys(t) = eps * G(sqrt(eps) t)
// the rescaled unknown G obeys
//
//   d^2G/dtau^2 = eps^{-2} * a_phys(eps G),
//
// evaluated with the reference density scaled alongside. eps = 1 recovers the
// physical equation exactly, and the discrete Verlet flows of the two forms
// commute with the scaling map to round-off.
struct ForceModel {
    PotentialSpec potential;
    double rho = 1.0;
    double epsilon = 1.0;
    bool rescaled = false;

    static ForceModel from(const SimConfig& cfg);

    // Acceleration field at an immersion (normal by construction).
    VecField force(const GridImmersion& F) const;

    // Exact directional derivative of `force` at F in direction h
    // (the discrete Frechet derivative; see linearized module).
    VecField dforce(const GridImmersion& F, const VecField& h) const;

    // CFL-stable step from the frozen principal symbol
    // a = (dmu_t/dmu) v / g (with the eps dressing of rescaled runs):
    //   dt = safety * (2 pi / M) * min_j sqrt(g_j / ((dmu_t/dmu)_j v_j)).
    double cfl_dt(const GridImmersion& F, double safety) const;
};

PhaseState make_state(double t, GridImmersion F, VecField V, const ForceModel& model);

// One velocity-Verlet step; throws DegeneracyError / NumericalError rather
// than producing silent garbage.
PhaseState step(const PhaseState& state, double dt, const ForceModel& model);

// Integrate on [t0, t0 + horizon]. Degeneracy mid-run aborts cleanly with the
// partial trajectory flagged. The divergence-theorem volume and the
// time-integrated volume are cross-checked every step.
Trajectory simulate(const SimConfig& cfg, PhaseState initial);

enum class RescaleDirection { Forward, Inverse };

// Bookkeeping map between the rescaled frame and the physical frame:
// Forward (rescaled -> physical) scales positions by eps, times by
// 1/sqrt(eps), velocities by eps*sqrt(eps), accelerations by eps^2.
// Inverse undoes it; the round trip is the identity to round-off.
Trajectory rescale_solution(const Trajectory& traj, double eps, RescaleDirection dir);

} // namespace hmcf

#endif
