#include "hmcf/dynamics.hpp"

#include <cmath>
#include <string>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf {

namespace {

// Everything the force and its linearization need at one immersion.
struct ForceFields {
    GeometryBundle geo;
    RealField s;        // |F|^2 / 2
    RealField vv;       // v(s)
    RealField ph;       // phi(s)
    RealField f_nu;     // <F, nu>
    RealField bracket;  // v (-H + phi <F,nu>) + rho / Vol
};

ForceFields force_fields(const GridImmersion& F, const PotentialSpec& pot, double rho) {
    ForceFields ff{geometry_of(F), {}, {}, {}, {}, {}};
    const std::size_t m = F.size();
    if (!(ff.geo.volume > 0.0))
        throw NumericalError("enclosed volume is not positive: Vol = " +
                             std::to_string(ff.geo.volume));
    ff.s.resize(m);
    ff.vv.resize(m);
    ff.ph.resize(m);
    ff.f_nu.resize(m);
    ff.bracket.resize(m);
    const double pressure = rho / ff.geo.volume;
    for (std::size_t j = 0; j < m; ++j) {
        ff.s[j] = 0.5 * dot(F.positions[j], F.positions[j]);
        ff.vv[j] = v_of_s(pot, ff.s[j]);
        ff.ph[j] = phi_of_s(pot, ff.s[j]);
        ff.f_nu[j] = dot(F.positions[j], ff.geo.normal[j]);
        ff.bracket[j] = ff.vv[j] * (-ff.geo.mean_curvature[j] + ff.ph[j] * ff.f_nu[j]) + pressure;
    }
    return ff;
}

VecField physical_force(const GridImmersion& F, const PotentialSpec& pot, double rho) {
    const ForceFields ff = force_fields(F, pot, rho);
    VecField a(F.size());
    for (std::size_t j = 0; j < F.size(); ++j)
        a[j] = (ff.geo.measure_ratio[j] * ff.bracket[j]) * ff.geo.normal[j];
    return a;
}

// Exact directional derivative of physical_force. Every variation below is
// the derivative of the discrete formula actually used above (spectral
// derivatives are linear, so d/dF commutes with them); the finite-difference
// consistency tests check this to quadratic order.
VecField physical_dforce(const GridImmersion& F, const PotentialSpec& pot, double rho,
                         const VecField& h) {
    const std::size_t m = F.size();
    const ForceFields ff = force_fields(F, pot, rho);
    const GeometryBundle& b = ff.geo;
    const VecField hth = spectral::derivative(h, 1);
    const VecField hthth = spectral::derivative(h, 2);
    const double dth = spectral::grid_spacing(m);
    const double pressure = rho / b.volume;

    // Volume variation of the spectral shoelace Vol = (1/2) oint <F, rot tau>.
    double dvol = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        dvol += dot(h[j], rot(b.tangent[j])) + dot(F.positions[j], rot(hth[j]));
    dvol *= 0.5 * dth;

    VecField out(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Vec2& T = b.unit_tangent[j];
        const Vec2& nu = b.normal[j];
        const double g = b.metric[j];
        const double sg = b.sqrt_metric[j];
        const double p_nu = dot(b.second_deriv[j], nu); // = -htilde

        const double dT_h = dot(T, hth[j]);
        const double dg = 2.0 * dot(b.tangent[j], hth[j]);
        const Vec2 dT = (1.0 / sg) * (hth[j] - dT_h * T);
        const Vec2 dnu = rot(dT);

        const double dp_nu = dot(hthth[j], nu) + dot(b.second_deriv[j], dnu);
        const double dH = -dp_nu / g + p_nu * dg / (g * g);

        const double ds = dot(F.positions[j], h[j]);
        const double dv = -ff.ph[j] * ff.vv[j] * ds;
        const double dph = dphi_ds(pot, ff.s[j]) * ds;
        const double df_nu = dot(h[j], nu) + dot(F.positions[j], dnu);

        const double dbracket =
            dv * (-b.mean_curvature[j] + ff.ph[j] * ff.f_nu[j]) +
            ff.vv[j] * (-dH + dph * ff.f_nu[j] + ff.ph[j] * df_nu) -
            pressure / b.volume * dvol;

        const double dratio = dT_h / F.reference_density[j];
        out[j] = (dratio * ff.bracket[j] + b.measure_ratio[j] * dbracket) * nu +
                 (b.measure_ratio[j] * ff.bracket[j]) * dnu;
    }
    return out;
}

GridImmersion scaled_immersion(const GridImmersion& F, double eps) {
    VecField pos(F.size());
    RealField dens(F.size());
    for (std::size_t j = 0; j < F.size(); ++j) {
        pos[j] = eps * F.positions[j];
        dens[j] = eps * F.reference_density[j];
    }
    return with_reference(std::move(pos), std::move(dens));
}

} // namespace

ForceModel ForceModel::from(const SimConfig& cfg) {
    return {cfg.potential, cfg.rho, cfg.epsilon, cfg.rescaled};
}

VecField ForceModel::force(const GridImmersion& F) const {
    if (!rescaled || epsilon == 1.0) return physical_force(F, potential, rho);
    VecField a = physical_force(scaled_immersion(F, epsilon), potential, rho);
    const double c = 1.0 / (epsilon * epsilon);
    for (auto& v : a) v *= c;
    return a;
}

VecField ForceModel::dforce(const GridImmersion& F, const VecField& h) const {
    if (!rescaled || epsilon == 1.0) return physical_dforce(F, potential, rho, h);
    VecField a = physical_dforce(scaled_immersion(F, epsilon), potential, rho, h);
    const double c = 1.0 / epsilon;
    for (auto& v : a) v *= c;
    return a;
}

double ForceModel::cfl_dt(const GridImmersion& F, double safety) const {
    const GridImmersion* eff = &F;
    GridImmersion scaled;
    double dress = 1.0;
    if (rescaled && epsilon != 1.0) {
        scaled = scaled_immersion(F, epsilon);
        eff = &scaled;
        dress = 1.0 / epsilon; // dforce prefactor
    }
    const GeometryBundle b = geometry_of(*eff);
    double amax = 0.0;
    for (std::size_t j = 0; j < eff->size(); ++j) {
        const double s = 0.5 * dot(eff->positions[j], eff->positions[j]);
        const double a = dress * b.measure_ratio[j] * v_of_s(potential, s) / b.metric[j];
        amax = std::max(amax, a);
    }
    return safety * spectral::grid_spacing(F.size()) / std::sqrt(amax);
}

PhaseState make_state(double t, GridImmersion F, VecField V, const ForceModel& model) {
    if (V.size() != F.size()) throw ConfigError("velocity field length does not match grid");
    PhaseState st;
    st.t = t;
    st.A = model.force(F);
    st.F = std::move(F);
    st.V = std::move(V);
    return st;
}

PhaseState step(const PhaseState& state, double dt, const ForceModel& model) {
    const std::size_t m = state.F.size();
    VecField pos(m);
    for (std::size_t j = 0; j < m; ++j)
        pos[j] = state.F.positions[j] + dt * state.V[j] + (0.5 * dt * dt) * state.A[j];

    PhaseState next;
    next.t = state.t + dt;
    next.F = with_reference(std::move(pos), state.F.reference_density);
    next.A = model.force(next.F);
    next.V.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        next.V[j] = state.V[j] + (0.5 * dt) * (state.A[j] + next.A[j]);
    if (!all_finite(next.F.positions) || !all_finite(next.V))
        throw NumericalError("non-finite state at t = " + std::to_string(next.t));
    return next;
}

Trajectory simulate(const SimConfig& cfg, PhaseState initial) {
    if (!(cfg.rho > 0.0)) throw ConfigError("sim.rho must be positive");
    if (!(cfg.horizon > 0.0)) throw ConfigError("sim.horizon must be positive");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0))
        throw ConfigError("sim.epsilon must lie in (0, 1]");
    const ForceModel model = ForceModel::from(cfg);

    double dt = cfg.dt;
    if (dt <= 0.0) dt = model.cfl_dt(initial.F, cfg.cfl_safety);
    std::size_t n_steps = static_cast<std::size_t>(std::llround(cfg.horizon / dt));
    if (n_steps == 0 || std::fabs(static_cast<double>(n_steps) * dt - cfg.horizon) > 1e-9 * cfg.horizon) {
        n_steps = static_cast<std::size_t>(std::ceil(cfg.horizon / dt - 1e-12));
        dt = cfg.horizon / static_cast<double>(n_steps);
    }

    const double dth = spectral::grid_spacing(initial.F.size());
    auto volume_flux = [&](const PhaseState& st) {
        const GeometryBundle b = geometry_of(st.F);
        double flux = 0.0;
        for (std::size_t j = 0; j < st.F.size(); ++j)
            flux += dot(st.V[j], b.normal[j]) * b.sqrt_metric[j];
        return flux * dth;
    };

    Trajectory traj;
    traj.samples.push_back(initial);

    // The divergence-theorem volume and the time-integrated flux volume are
    // tracked in parallel; disagreement beyond the integrator's order means
    // the run went bad.
    double vol_geom = enclosed_volume(initial.F);
    double vol_acc = vol_geom;
    double flux_prev = volume_flux(initial);
    const double vol_tol = std::max(1e-6, 25.0 * dt * dt);

    PhaseState current = std::move(initial);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        try {
            PhaseState next = step(current, dt, model);
            const double flux_next = volume_flux(next);
            vol_acc += 0.5 * dt * (flux_prev + flux_next);
            flux_prev = flux_next;
            vol_geom = enclosed_volume(next.F);
            if (std::fabs(vol_geom - vol_acc) > vol_tol * std::fabs(vol_geom))
                throw NumericalError("volume cross-check failed at t = " +
                                     std::to_string(next.t));
            current = std::move(next);
        } catch (const DegeneracyError& e) {
            traj.completed = false;
            traj.abort_reason = e.what();
            return traj;
        } catch (const NumericalError& e) {
            traj.completed = false;
            traj.abort_reason = e.what();
            return traj;
        }
        if (i % cfg.sample_every == 0 || i == n_steps) traj.samples.push_back(current);
    }
    return traj;
}

Trajectory rescale_solution(const Trajectory& traj, double eps, RescaleDirection dir) {
    if (!(eps > 0.0)) throw ConfigError("rescale needs eps > 0");
    const double se = std::sqrt(eps);
    double cp, ct, cv; // position, time, velocity factors
    if (dir == RescaleDirection::Forward) {
        cp = eps;
        ct = 1.0 / se;
        cv = eps * se;
    } else {
        cp = 1.0 / eps;
        ct = se;
        cv = 1.0 / (eps * se);
    }
    const double ca = cv / ct; // acceleration factor

    Trajectory out;
    out.completed = traj.completed;
    out.abort_reason = traj.abort_reason;
    out.samples.reserve(traj.size());
    for (const auto& st : traj.samples) {
        PhaseState s;
        s.t = ct * st.t;
        VecField pos(st.F.size());
        RealField dens(st.F.size());
        for (std::size_t j = 0; j < st.F.size(); ++j) {
            pos[j] = cp * st.F.positions[j];
            dens[j] = cp * st.F.reference_density[j];
        }
        s.F = with_reference(std::move(pos), std::move(dens));
        s.V = cv * st.V;
        s.A = ca * st.A;
        out.samples.push_back(std::move(s));
    }
    return out;
}

} // namespace hmcf
