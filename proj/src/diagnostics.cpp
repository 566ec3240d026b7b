#include "hmcf/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf {

namespace {

double drift(const std::vector<double>& series) {
    double d = 0.0;
    for (double v : series) d = std::max(d, std::fabs(v - series.front()));
    return d;
}

double rel_drift(const std::vector<double>& series) {
    const double scale = std::max(std::fabs(series.front()), 1e-300);
    return drift(series) / scale;
}

} // namespace

EnergyBreakdown total_energy(const PhaseState& state, const SimConfig& cfg) {
    const std::size_t m = state.F.size();
    const double dth = spectral::grid_spacing(m);
    const GeometryBundle b = geometry_of(state.F);
    const double vol0 = cfg.vol0 > 0.0 ? cfg.vol0 : b.volume;

    EnergyBreakdown e;
    for (std::size_t j = 0; j < m; ++j) {
        e.kinetic += 0.5 * dot(state.V[j], state.V[j]) * state.F.reference_density[j];
        const double s = 0.5 * dot(state.F.positions[j], state.F.positions[j]);
        e.potential_integral += v_of_s(cfg.potential, s) * b.sqrt_metric[j];
    }
    e.kinetic *= dth;
    e.potential_integral *= dth;
    e.pressure_term = cfg.rho * std::log(b.volume / vol0);
    e.e_ham = e.kinetic + e.potential_integral - e.pressure_term;
    e.e_paper = e.kinetic - e.potential_integral + e.pressure_term;
    return e;
}

double momentum(const PhaseState& state, KillingField X) {
    const std::size_t m = state.F.size();
    const double dth = spectral::grid_spacing(m);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        Vec2 xf;
        switch (X) {
            case KillingField::TranslationX: xf = {1.0, 0.0}; break;
            case KillingField::TranslationY: xf = {0.0, 1.0}; break;
            case KillingField::Rotation:
                xf = {-state.F.positions[j].y, state.F.positions[j].x};
                break;
        }
        acc += dot(state.V[j], xf) * state.F.reference_density[j];
    }
    return acc * dth;
}

double interior_momentum(const PhaseState& state, double c) {
    // F_* Y = (c/m) dF/dtheta and dmu = m dtheta, so the densities cancel.
    const std::size_t m = state.F.size();
    const double dth = spectral::grid_spacing(m);
    const VecField tau = spectral::derivative(state.F.positions, 1);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += dot(state.V[j], tau[j]);
    return c * acc * dth;
}

ConservationReport conservation_report(const Trajectory& traj, const SimConfig& cfg) {
    if (traj.samples.empty()) throw ConfigError("conservation report of an empty trajectory");
    ConservationReport r;
    SimConfig cfg_fixed = cfg;
    if (cfg_fixed.vol0 <= 0.0) cfg_fixed.vol0 = enclosed_volume(traj.samples.front().F);
    r.vol0 = cfg_fixed.vol0;

    for (const auto& st : traj.samples) {
        const EnergyBreakdown e = total_energy(st, cfg_fixed);
        r.t.push_back(st.t);
        r.kinetic.push_back(e.kinetic);
        r.potential_integral.push_back(e.potential_integral);
        r.pressure_term.push_back(e.pressure_term);
        r.e_ham.push_back(e.e_ham);
        r.e_paper.push_back(e.e_paper);
        r.m_x.push_back(momentum(st, KillingField::TranslationX));
        r.m_y.push_back(momentum(st, KillingField::TranslationY));
        r.m_rot.push_back(momentum(st, KillingField::Rotation));
        r.q_y.push_back(interior_momentum(st));
        r.volume.push_back(enclosed_volume(st.F));
    }

    // Detect which convention the dynamics actually conserves.
    if (rel_drift(r.e_ham) <= rel_drift(r.e_paper)) {
        r.conserved_energy = "hamiltonian";
        r.e0 = r.e_ham.front();
    } else {
        r.conserved_energy = "paper";
        r.e0 = r.e_paper.front();
    }
    r.volume_lower_bound = r.vol0 * std::exp(-r.e0 / cfg.rho);
    return r;
}

double ConservationReport::relative_drift_e_ham() const { return rel_drift(e_ham); }
double ConservationReport::relative_drift_e_paper() const { return rel_drift(e_paper); }
double ConservationReport::drift_m_x() const { return drift(m_x); }
double ConservationReport::drift_m_y() const { return drift(m_y); }
double ConservationReport::drift_m_rot() const { return drift(m_rot); }
double ConservationReport::drift_q_y() const { return drift(q_y); }

VolumeBoundCheck volume_bounds(const ConservationReport& report, const SimConfig& cfg) {
    (void)cfg;
    VolumeBoundCheck c;
    c.bound = report.volume_lower_bound;
    c.min_volume = *std::min_element(report.volume.begin(), report.volume.end());
    c.max_volume = *std::max_element(report.volume.begin(), report.volume.end());
    c.worst_margin = c.min_volume - c.bound;
    c.pass = c.worst_margin >= 0.0;
    return c;
}

} // namespace hmcf
