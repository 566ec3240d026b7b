#ifndef HMCF_DIAGNOSTICS_HPP
#define HMCF_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "hmcf/dynamics.hpp"
#include "hmcf/state.hpp"

namespace hmcf {

// Energy split of one state. Two sign conventions are tracked:
//   e_ham   = K + int v dmu_t - rho log(Vol/Vol_0)   (kinetic + total inner)
//   e_paper = K - int v dmu_t + rho log(Vol/Vol_0)
// The dynamics conserves exactly one of them; the report detects which one
// from the data instead of assuming.
struct EnergyBreakdown {
    double kinetic = 0.0;           // (1/2) int |dF/dt|^2 dmu
    double potential_integral = 0.0; // int v dmu_t
    double pressure_term = 0.0;      // rho log(Vol / Vol_0)
    double e_ham = 0.0;
    double e_paper = 0.0;
};

EnergyBreakdown total_energy(const PhaseState& state, const SimConfig& cfg);

// Killing fields of the plane: two translations and the rotation p -> p^perp.
enum class KillingField { TranslationX, TranslationY, Rotation };

// M_X = int <dF/dt, X(F)> dmu under the fixed reference measure.
double momentum(const PhaseState& state, KillingField X);

// Q_Y = int <dF/dt, F_* Y> dmu for Y = (c/m) d/dtheta, the general
// divergence-free field on the circle w.r.t. dmu = m dtheta.
double interior_momentum(const PhaseState& state, double c = 1.0);

struct ConservationReport {
    std::vector<double> t;
    std::vector<double> kinetic, potential_integral, pressure_term;
    std::vector<double> e_ham, e_paper;
    std::vector<double> m_x, m_y, m_rot, q_y;
    std::vector<double> volume;
    double vol0 = 0.0;
    double volume_lower_bound = 0.0;  // Vol_0 exp(-E_0 / rho)
    std::string conserved_energy;     // "hamiltonian" or "paper", detected
    double e0 = 0.0;                  // initial value of the conserved energy

    double relative_drift_e_ham() const;
    double relative_drift_e_paper() const;
    double drift_m_x() const;
    double drift_m_y() const;
    double drift_m_rot() const;
    double drift_q_y() const;
};

ConservationReport conservation_report(const Trajectory& traj, const SimConfig& cfg);

struct VolumeBoundCheck {
    bool pass = false;
    double bound = 0.0;          // Vol_0 exp(-E_0/rho)
    double min_volume = 0.0;
    double worst_margin = 0.0;   // min_t Vol(t) - bound
    double max_volume = 0.0;     // empirical upper envelope
};

VolumeBoundCheck volume_bounds(const ConservationReport& report, const SimConfig& cfg);

} // namespace hmcf

#endif
