#include "hmcf/linearized.hpp"

#include <cmath>
#include <string>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf {

LinearizedOperator LinearizedOperator::steady_base(GridImmersion B, ForceModel model,
                                                   std::vector<double> times) {
    LinearizedOperator op;
    op.model = std::move(model);
    op.times = std::move(times);
    op.base.push_back(std::move(B));
    return op;
}

LinearizedOperator LinearizedOperator::along(const FieldHistory& fbar, const VecField& F0,
                                             const VecField& F1, const RealField& reference,
                                             ForceModel model) {
    LinearizedOperator op;
    op.model = std::move(model);
    op.times = fbar.t;
    op.base.reserve(fbar.size());
    for (std::size_t i = 0; i < fbar.size(); ++i) {
        VecField pos(F0.size());
        for (std::size_t j = 0; j < F0.size(); ++j)
            pos[j] = fbar.value[i][j] + F0[j] + fbar.t[i] * F1[j];
        op.base.push_back(with_reference(std::move(pos), reference));
    }
    return op;
}

namespace {

// The effective immersion the derivative formulas are evaluated at, and the
// overall prefactor of the dressed operator (rescaled runs evaluate at the
// scaled curve and carry 1/eps; see ForceModel).
struct Effective {
    GridImmersion F;
    double dress = 1.0;
};

Effective effective_immersion(const LinearizedOperator& op, std::size_t sample) {
    const GridImmersion& B = op.base_at(sample);
    if (!op.model.rescaled || op.model.epsilon == 1.0) return {B, 1.0};
    const double eps = op.model.epsilon;
    VecField pos(B.size());
    RealField dens(B.size());
    for (std::size_t j = 0; j < B.size(); ++j) {
        pos[j] = eps * B.positions[j];
        dens[j] = eps * B.reference_density[j];
    }
    return {with_reference(std::move(pos), std::move(dens)), 1.0 / eps};
}

} // namespace

WeakHyperbolicCoefficients assemble_coefficients(const LinearizedOperator& op,
                                                 std::size_t sample) {
    const Effective eff = effective_immersion(op, sample);
    const GridImmersion& F = eff.F;
    const double d = eff.dress;
    const std::size_t m = F.size();
    const double dth = spectral::grid_spacing(m);

    const GeometryBundle b = geometry_of(F);
    if (!(b.volume > 0.0)) throw NumericalError("volume not positive in coefficient assembly");
    const VecField third = spectral::derivative(F.positions, 3);

    WeakHyperbolicCoefficients c;
    c.frame_normal = b.normal;
    c.frame_unit_tangent = b.unit_tangent;
    c.frame_tangent = b.tangent;
    c.metric = b.metric;
    c.a.resize(m);
    c.c_ux.resize(m);
    c.c_u.resize(m);
    c.c_rx.resize(m);
    c.c_r.resize(m);
    c.w_nl.resize(m);
    c.ku.resize(m);
    c.kux.resize(m);
    c.kr.resize(m);
    c.krx.resize(m);
    c.o_ux.resize(m);
    c.o_r.resize(m);

    const double pressure = op.model.rho / b.volume;
    for (std::size_t j = 0; j < m; ++j) {
        const double g = b.metric[j];
        const double sg = b.sqrt_metric[j];
        const double H = b.mean_curvature[j];
        const double ratio = b.measure_ratio[j];
        const double mref = F.reference_density[j];
        const double p_t = dot(b.second_deriv[j], b.unit_tangent[j]);
        const double q_nu = dot(third[j], b.normal[j]);
        const double s = 0.5 * dot(F.positions[j], F.positions[j]);
        const double vv = v_of_s(op.model.potential, s);
        const double ph = phi_of_s(op.model.potential, s);
        const double dph = dphi_ds(op.model.potential, s);
        const double f_nu = dot(F.positions[j], b.normal[j]);
        const double f_t = dot(F.positions[j], b.unit_tangent[j]);
        const double psi = -H + ph * f_nu;
        const double phi_total = vv * psi + pressure;

        c.a[j] = d * ratio * vv / g;
        c.c_ux[j] = d * ratio * vv * (-p_t / (g * sg) - ph * f_t / sg);
        c.c_u[j] = d * (phi_total * H * sg / mref +
                        ratio * (-ph * vv * f_nu * psi +
                                 vv * (H * H + dph * f_nu * f_nu + ph)));
        c.c_rx[j] = d * phi_total * sg / mref;
        c.c_r[j] = d * (phi_total * p_t / mref +
                        ratio * (-ph * vv * sg * f_t * psi +
                                 vv * (q_nu / g + 3.0 * p_t * H / sg +
                                       dph * sg * f_t * f_nu + ph * sg * H * f_t)));
        c.w_nl[j] = -d * ratio * pressure / b.volume;
        c.ku[j] = 0.5 * dth * (sg + H * sg * f_nu);
        c.kux[j] = 0.5 * dth * (-f_t);
        c.kr[j] = 0.5 * dth * (g * H * f_t + p_t * f_nu);
        c.krx[j] = 0.5 * dth * (sg * f_nu);
        c.o_ux[j] = -d * ratio * phi_total / sg;
        c.o_r[j] = d * ratio * phi_total * sg * H;
    }
    c.rho0 = c.a[0];
    c.rho1 = c.a[0];
    for (double a : c.a) {
        c.rho0 = std::min(c.rho0, a);
        c.rho1 = std::max(c.rho1, a);
    }
    return c;
}

std::pair<RealField, RealField> WeakHyperbolicCoefficients::decompose(const VecField& h) const {
    const std::size_t m = h.size();
    RealField u(m), r(m);
    for (std::size_t j = 0; j < m; ++j) {
        u[j] = dot(h[j], frame_normal[j]);
        r[j] = dot(h[j], frame_tangent[j]) / metric[j];
    }
    return {std::move(u), std::move(r)};
}

VecField WeakHyperbolicCoefficients::apply(const RealField& u, const RealField& r) const {
    const std::size_t m = u.size();
    const RealField ux = spectral::derivative(u, 1);
    const RealField uxx = spectral::derivative(u, 2);
    const RealField rx = spectral::derivative(r, 1);

    double nonlocal = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        nonlocal += ku[j] * u[j] + kux[j] * ux[j] + kr[j] * r[j] + krx[j] * rx[j];

    VecField out(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double wave = a[j] * uxx[j] + c_ux[j] * ux[j] + c_u[j] * u[j] +
                            c_rx[j] * rx[j] + c_r[j] * r[j] + w_nl[j] * nonlocal;
        const double ode = o_ux[j] * ux[j] + o_r[j] * r[j];
        out[j] = wave * frame_normal[j] + ode * frame_unit_tangent[j];
    }
    return out;
}

FieldHistory solve_linearized(const LinearizedOperator& op,
                              const std::vector<VecField>& forcing,
                              const VecField& h0, const VecField& h1) {
    const std::size_t n = op.times.size();
    if (n < 2) throw ConfigError("linear solve needs at least two time samples");
    if (forcing.size() != n) throw ConfigError("forcing not sampled on the operator grid");

    // Explicit stability bound of the frozen principal part (Verlet requires
    // dt * omega_max <= 2, omega_max = sqrt(a_max) M/2).
    const double dt0 = op.times[1] - op.times[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dt = op.times[i + 1] - op.times[i];
        if (std::fabs(dt - dt0) > 1e-10 * std::max(1.0, std::fabs(dt0)))
            throw ConfigError("linear solve requires a uniform time grid");
    }
    const std::size_t check_stride = op.steady() ? n : std::max<std::size_t>(1, n / 8);
    for (std::size_t i = 0; i < (op.steady() ? 1 : n); i += check_stride) {
        const double dt_stab = op.model.cfl_dt(op.base_at(i), 0.63);
        if (dt0 > dt_stab)
            throw ConfigError("time step " + std::to_string(dt0) +
                              " violates the CFL bound " + std::to_string(dt_stab));
    }

    FieldHistory h;
    h.t = op.times;
    h.value.resize(n);
    h.rate.resize(n);
    h.accel.resize(n);
    h.value[0] = h0;
    h.rate[0] = h1;
    h.accel[0] = op.apply(0, h0) + forcing[0];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dt = op.times[i + 1] - op.times[i];
        const std::size_t m = h0.size();
        VecField next(m);
        for (std::size_t j = 0; j < m; ++j)
            next[j] = h.value[i][j] + dt * h.rate[i][j] + (0.5 * dt * dt) * h.accel[i][j];
        h.value[i + 1] = std::move(next);
        h.accel[i + 1] = op.apply(i + 1, h.value[i + 1]) + forcing[i + 1];
        h.rate[i + 1].resize(m);
        for (std::size_t j = 0; j < m; ++j)
            h.rate[i + 1][j] = h.rate[i][j] + (0.5 * dt) * (h.accel[i][j] + h.accel[i + 1][j]);
        if (!all_finite(h.value[i + 1]))
            throw NumericalError("linear solve produced non-finite values at t = " +
                                 std::to_string(op.times[i + 1]));
    }
    return h;
}

} // namespace hmcf
