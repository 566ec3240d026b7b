#ifndef HMCF_HARNESS_HPP
#define HMCF_HARNESS_HPP

#include <string>
#include <utility>
#include <vector>

#include "hmcf/config.hpp"
#include "hmcf/diagnostics.hpp"
#include "hmcf/dynamics.hpp"
#include "hmcf/nashmoser.hpp"

namespace hmcf {

// High-order adaptive reference for radially symmetric data: a circle of
// radius r with reference radius r0 and velocity rdot obeys
//   r'' = (r / r0) [ v(r^2/2) (-1/r + phi(r^2/2) r) + rho / (pi r^2) ].
// Integrated with a dense 5th-order Runge-Kutta method at the given
// tolerance; returns (r, rdot) at t_final.
struct RadialParams {
    PotentialSpec potential;
    double rho = 1.0;
    double reference_radius = 1.0;
};
std::pair<double, double> radial_reference(const RadialParams& p, double r_init,
                                           double rdot_init, double t_final,
                                           double tol = 1e-10);

// --- stability ---------------------------------------------------------------

struct StabilityPoint {
    double eps = 0.0;
    double diff_norm = 0.0;   // |||Fbar - Ftilde|||_{s_bar, T}
    double ratio = 0.0;       // diff_norm / eps
    bool conclusive = true;
    std::string note;
};

struct StabilityReport {
    std::vector<StabilityPoint> points;
    double identical_data_difference = -1.0;
    double ratio_spread = 0.0;  // max ratio / min ratio over conclusive points
    double measured_ball_radius = 0.0; // |||F|||_{s_bar,T} of the base run
    bool pass = false;
};

// Runs the base data and, per eps, data perturbed by band-limited random
// normal fields normalized to eps in H^{s_bar + 1} (positions and velocities
// both), then compares difference norms against eps. Identical data must
// reproduce bit-identically.
StabilityReport stability_experiment(const RunConfig& rc);

// --- lifespan ----------------------------------------------------------------

struct LifespanPoint {
    double eps = 0.0;
    double horizon = 0.0;      // T / sqrt(eps)
    bool survived = false;     // immersion condition held to the horizon
    double h2_initial = 0.0;
    double h2_max = 0.0;
    bool norm_bounded = false; // h2_max <= 2 * h2_initial
    std::string note;
};

struct LifespanReport {
    std::vector<LifespanPoint> points;
};

// Data (eps F0, eps F1) integrated to T / sqrt(eps). The pressure strength is
// scaled to rho * eps so the pressure-curvature equilibrium sits at the
// data's own amplitude; a fixed rho with eps-small data simply ejects the
// curve toward the fixed equilibrium radius, which probes nothing.
LifespanReport lifespan_experiment(const RunConfig& rc);

// --- convergence -------------------------------------------------------------

struct ConvergenceReport {
    std::vector<double> dt_list, dt_errors;
    double fitted_time_order = 0.0;
    std::vector<std::size_t> m_list;
    std::vector<double> m_errors;
    double space_error_drop = 0.0;  // error(M) / error(2M), per doubling (min)
    double cross_solver_h2 = 0.0;   // Nash-Moser vs Verlet, sup_t H^2 distance
    bool pass_time = false, pass_space = false, pass_cross = false;
    bool pass() const { return pass_time && pass_space && pass_cross; }
};

ConvergenceReport convergence_study(const RunConfig& rc);

// --- conservation suite ------------------------------------------------------

struct ConservationSuitePoint {
    double dt = 0.0;
    double e_drift_rel = 0.0;
    double m_x_drift = 0.0, m_y_drift = 0.0, m_rot_drift = 0.0, q_y_drift = 0.0;
    bool volume_bound_pass = false;
};

struct ConservationSuiteReport {
    std::vector<ConservationSuitePoint> points;
    double energy_ratio = 0.0;  // drift(dt) / drift(dt/2), expect ~4
    bool pass = false;
    std::string note;
};

ConservationSuiteReport conservation_suite(const RunConfig& rc);

// --- smoothing operators -----------------------------------------------------

struct SmoothingPairReport {
    double s1 = 0.0, s2 = 0.0;
    bool low_pass_estimate = true; // s1 >= s2 form vs the difference form
    double c_min = 0.0, c_max = 0.0;
    double spread = 0.0;           // c_max / c_min across N and M
};

struct SmoothingReport {
    std::vector<SmoothingPairReport> pairs;
    std::vector<double> cutoffs;      // N values
    std::vector<std::size_t> grids;   // M values
    int fields_per_pair = 20;
    bool pass = false;                // all spreads <= 1.5
};

SmoothingReport smoothing_check(unsigned seed);

// --- canonical configurations used by several experiments --------------------

// Rescaled-frame data near the pressure-curvature equilibrium circle of the
// rescaled problem (radius rho / (pi eps)) with small band-limited normal
// perturbations of relative amplitude `shape_amp` and velocity perturbations
// of amplitude `vel_amp`.
NashMoserConfig canonical_nashmoser_config(double epsilon, double horizon,
                                           std::size_t grid_size, unsigned seed,
                                           double shape_amp = 2e-5,
                                           double vel_amp = 2e-5);

// Verlet run of the same rescaled equation on the same grid (cross-solver
// reference).
Trajectory rescaled_verlet_reference(const NashMoserConfig& cfg);

} // namespace hmcf

#endif
