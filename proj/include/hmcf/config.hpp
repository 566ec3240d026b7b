#ifndef HMCF_CONFIG_HPP
#define HMCF_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hmcf/dynamics.hpp"
#include "hmcf/state.hpp"

namespace hmcf {

// Initial data generators. All generators accept the shared fields
// drift_v{x,y} (rigid translation velocity), angular_velocity (rigid
// rotation velocity) and data_scale (multiplies positions and velocities,
// the small-data dressing of scaled runs).
//
//   circle            radius
//   ellipse           a, b
//   breathing-circle  radius, radial_velocity
//   perturbed-circle  radius, amplitude, velocity_amplitude,
//                     mode_min..mode_max band, seed
struct InitialSpec {
    std::string generator = "circle";
    double radius = 1.0;
    double a = 2.0, b = 1.0;
    double radial_velocity = 0.0;
    double amplitude = 0.0;
    double velocity_amplitude = 0.0;
    int mode_min = 2, mode_max = 6;
    unsigned seed = 1;
    double data_scale = 1.0;
    double drift_vx = 0.0, drift_vy = 0.0;
    double angular_velocity = 0.0;
};

struct ExperimentSpec {
    std::string kind = "conservation-suite";
    std::vector<double> eps_list;
    std::vector<double> dt_list;
    std::vector<std::size_t> m_list;
    unsigned seed = 1;
    double s_bar = 2.0;
    double s_top = 4.0;
    double tolerance = 1e-8;
    int max_level = 8;
};

struct RunConfig {
    SimConfig sim;
    InitialSpec initial;
    ExperimentSpec experiment;
    std::string output_dir = "runs";
    nlohmann::json echo;  // fully resolved document, re-parseable
};

// The reference document: every recognized key with its default value.
nlohmann::json reference_config();

// Parse + validate a config document. Unknown keys anywhere are an error
// listing the offending paths; all physical constraints are checked here.
RunConfig parse_config(const nlohmann::json& doc);

// Apply dotted-path overrides of the form "sim.rho=3.14" to a document.
nlohmann::json apply_override(nlohmann::json doc, const std::string& assignment);

// Materialize the initial phase state of a run.
PhaseState build_initial_state(const SimConfig& sim, const InitialSpec& init);

// Band-limited field with unit-variance gaussian mode amplitudes on
// [mode_min, mode_max]; building block of perturbed data and experiments.
RealField random_band_limited(std::size_t m, int mode_min, int mode_max, unsigned seed);

} // namespace hmcf

#endif
