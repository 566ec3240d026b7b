#ifndef HMCF_NASHMOSER_HPP
#define HMCF_NASHMOSER_HPP

#include <string>
#include <utility>
#include <vector>

#include "hmcf/dynamics.hpp"
#include "hmcf/linearized.hpp"
#include "hmcf/state.hpp"

namespace hmcf {

// Iteration scheme for the rescaled evolution: dyadic frequency-truncation
// levels, residual evaluation against the truncated equation, and linearized
// corrections with zero initial data. The iterate fbar is the deviation from
// the free-motion line F0 + t F1, so the solution is F = fbar + F0 + t F1.
struct NashMoserConfig {
    PotentialSpec potential;
    double rho = 1.0;
    double epsilon = 1.0;
    std::size_t grid_size = 64;
    double horizon = 0.5;
    double dt = 0.0;           // 0: CFL-chosen at the data
    double cfl_safety = 0.25;
    VecField F0;               // initial position data (rescaled frame)
    VecField F1;               // initial velocity data
    double s_bar = 2.0;
    double s_top = 4.0;
    double tolerance = 1e-8;   // on the residual norm at the level's order
    int max_level = 8;
    double ball_radius = 1.0;  // asserted bound on |||fbar|||_{s_bar}
};

// Dyadic schedule: N_l = 2^l, s_l = s_bar + (s_top - s_bar) / 2^l.
std::pair<double, double> schedule(int level, double s_bar, double s_top);

struct TraceRow {
    int level = 0;
    double cutoff = 0.0;          // N_l
    double order = 0.0;           // s_l
    double residual_norm = 0.0;   // sup_t ||E^l(t)||_{H^{s_l}}
    double increment_norm = 0.0;  // |||h^{l+1}|||_{s_{l+1}, T}
    double wall_ms = 0.0;
};

struct IterationTrace {
    std::vector<TraceRow> rows;
    std::string termination;
};

struct NashMoserResult {
    Trajectory solution;       // F = fbar + F0 + t F1 on the time grid
    FieldHistory fbar;
    IterationTrace trace;
    bool converged = false;
};

// The untruncated nonlinear map applied to an iterate:
//   N(fbar)(t_i) = fbar''(t_i) - Force(fbar(t_i) + F0 + t_i F1),
// with the stored acceleration standing in for the time derivative.
std::vector<VecField> nonlinear_map(const FieldHistory& fbar, const NashMoserConfig& cfg);

// Truncated residual E^l: same with the force passed through the smooth
// frequency cutoff at level N_l.
std::vector<VecField> residual(const FieldHistory& fbar, double cutoff,
                               const NashMoserConfig& cfg);

NashMoserResult iterate(const NashMoserConfig& cfg);

// Taylor remainder of the nonlinear map at fbar in direction h:
//   R(sigma h) = N(fbar + sigma h) - N(fbar) - sigma dN(fbar) h,
// evaluated over a sigma sweep. The second-order time derivatives cancel
// exactly, so only force terms contribute. `fitted_exponent` is the
// least-squares slope of log |||R||| against log sigma;
// `quadratic_match` compares R/sigma^2 at the smallest sigma against half
// the second central difference of the force (both approximate the same
// second derivative).
struct RemainderReport {
    std::vector<double> sigma;
    std::vector<double> remainder_norm;
    double fitted_exponent = 0.0;
    double quadratic_match = 0.0;  // relative deviation
};

RemainderReport remainder_check(const FieldHistory& fbar, const FieldHistory& h,
                                const NashMoserConfig& cfg,
                                const std::vector<double>& sigmas = {1.0, 0.5, 0.25, 0.125});

// Time grid used by the iteration for a given config.
std::vector<double> time_grid(const NashMoserConfig& cfg);

} // namespace hmcf

#endif
