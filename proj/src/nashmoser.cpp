#include "hmcf/nashmoser.hpp"

#include <chrono>
#include <cmath>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf {

namespace {

ForceModel model_of(const NashMoserConfig& cfg) {
    return {cfg.potential, cfg.rho, cfg.epsilon, true};
}

GridImmersion base_at(const FieldHistory& fbar, std::size_t i, const NashMoserConfig& cfg,
                      const RealField& reference) {
    VecField pos(cfg.F0.size());
    for (std::size_t j = 0; j < cfg.F0.size(); ++j)
        pos[j] = fbar.value[i][j] + cfg.F0[j] + fbar.t[i] * cfg.F1[j];
    return with_reference(std::move(pos), reference);
}

RealField reference_of(const NashMoserConfig& cfg) {
    const VecField tau = spectral::derivative(cfg.F0, 1);
    RealField m(tau.size());
    for (std::size_t j = 0; j < tau.size(); ++j) m[j] = norm(tau[j]);
    return m;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    // least squares slope of y against x
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

std::pair<double, double> schedule(int level, double s_bar, double s_top) {
    if (!(s_bar < s_top)) throw ConfigError("schedule needs s_bar < s_top");
    if (level < 0) throw ConfigError("schedule level must be nonnegative");
    const double n_l = std::pow(2.0, level);
    const double s_l = s_bar + (s_top - s_bar) / n_l;
    return {n_l, s_l};
}

std::vector<double> time_grid(const NashMoserConfig& cfg) {
    double dt = cfg.dt;
    if (dt <= 0.0) {
        const RealField m = reference_of(cfg);
        dt = model_of(cfg).cfl_dt(with_reference(cfg.F0, m), cfg.cfl_safety);
    }
    std::size_t n = static_cast<std::size_t>(std::llround(cfg.horizon / dt));
    if (n == 0 || std::fabs(static_cast<double>(n) * dt - cfg.horizon) > 1e-9 * cfg.horizon)
        n = static_cast<std::size_t>(std::ceil(cfg.horizon / dt - 1e-12));
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        t[i] = cfg.horizon * static_cast<double>(i) / static_cast<double>(n);
    return t;
}

std::vector<VecField> nonlinear_map(const FieldHistory& fbar, const NashMoserConfig& cfg) {
    const ForceModel model = model_of(cfg);
    const RealField reference = reference_of(cfg);
    std::vector<VecField> out(fbar.size());
    for (std::size_t i = 0; i < fbar.size(); ++i) {
        const VecField f = model.force(base_at(fbar, i, cfg, reference));
        out[i] = fbar.accel[i] - f;
    }
    return out;
}

std::vector<VecField> residual(const FieldHistory& fbar, double cutoff,
                               const NashMoserConfig& cfg) {
    const ForceModel model = model_of(cfg);
    const RealField reference = reference_of(cfg);
    std::vector<VecField> out(fbar.size());
    for (std::size_t i = 0; i < fbar.size(); ++i) {
        const VecField f = model.force(base_at(fbar, i, cfg, reference));
        out[i] = fbar.value[i]; // shape only
        const VecField cut = spectral::smooth_truncate(f, cutoff);
        for (std::size_t j = 0; j < cut.size(); ++j)
            out[i][j] = fbar.accel[i][j] - cut[j];
    }
    return out;
}

NashMoserResult iterate(const NashMoserConfig& cfg) {
    spectral::check_grid(cfg.grid_size);
    if (cfg.F0.size() != cfg.grid_size || cfg.F1.size() != cfg.grid_size)
        throw ConfigError("Nash-Moser data does not match the grid size");
    const std::vector<double> times = time_grid(cfg);
    const RealField reference = reference_of(cfg);
    const ForceModel model = model_of(cfg);

    NashMoserResult result;
    result.fbar = FieldHistory::zeros(times, cfg.grid_size);

    double prev_residual = 0.0;
    int increases = 0;
    for (int l = 0; l <= cfg.max_level; ++l) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto [n_l, s_l] = schedule(l, cfg.s_bar, cfg.s_top);
        const std::vector<VecField> e_l = residual(result.fbar, n_l, cfg);
        const double res_norm = sup_sobolev_norm(e_l, s_l);

        TraceRow row;
        row.level = l;
        row.cutoff = n_l;
        row.order = s_l;
        row.residual_norm = res_norm;

        if (res_norm < cfg.tolerance) {
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0).count();
            result.trace.rows.push_back(row);
            result.trace.termination = "converged";
            result.converged = true;
            break;
        }
        if (l > 0 && res_norm >= prev_residual) {
            ++increases;
            if (l == 1 || increases >= 2) {
                row.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0).count();
                result.trace.rows.push_back(row);
                result.trace.termination =
                    l == 1 ? "residual non-decreasing at level 0: epsilon too large"
                           : "residual increased twice";
                break;
            }
        }
        prev_residual = res_norm;

        if (l == cfg.max_level) {
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0).count();
            result.trace.rows.push_back(row);
            result.trace.termination = "level budget exhausted";
            break;
        }

        // Correction: solve E^l + dN(fbar) h = 0 with zero data.
        LinearizedOperator op =
            LinearizedOperator::along(result.fbar, cfg.F0, cfg.F1, reference, model);
        std::vector<VecField> forcing(e_l.size());
        for (std::size_t i = 0; i < e_l.size(); ++i) forcing[i] = -1.0 * e_l[i];
        const FieldHistory h = solve_linearized(op, forcing, VecField(cfg.grid_size),
                                                VecField(cfg.grid_size));
        const auto [n_next, s_next] = schedule(l + 1, cfg.s_bar, cfg.s_top);
        row.increment_norm = spacetime_norm(h, s_next, cfg.horizon);
        result.fbar.add(h);

        const double ball = spacetime_norm(result.fbar, cfg.s_bar, cfg.horizon);
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0).count();
        result.trace.rows.push_back(row);
        if (ball > cfg.ball_radius) {
            result.trace.termination = "iterate left the ball |||fbar||| <= R";
            break;
        }
    }
    if (result.trace.termination.empty()) result.trace.termination = "level budget exhausted";

    // Assemble F = fbar + F0 + t F1 as a trajectory.
    result.solution.completed = true;
    for (std::size_t i = 0; i < result.fbar.size(); ++i) {
        PhaseState st;
        st.t = result.fbar.t[i];
        st.F = base_at(result.fbar, i, cfg, reference);
        st.V.resize(cfg.grid_size);
        for (std::size_t j = 0; j < cfg.grid_size; ++j)
            st.V[j] = result.fbar.rate[i][j] + cfg.F1[j];
        st.A = result.fbar.accel[i];
        result.solution.samples.push_back(std::move(st));
    }
    return result;
}

RemainderReport remainder_check(const FieldHistory& fbar, const FieldHistory& h,
                                const NashMoserConfig& cfg,
                                const std::vector<double>& sigmas) {
    const ForceModel model = model_of(cfg);
    const RealField reference = reference_of(cfg);
    const std::size_t m = cfg.grid_size;

    RemainderReport rep;
    rep.sigma = sigmas;
    std::vector<double> logs_sigma, logs_norm;
    for (double sigma : sigmas) {
        // The d^2/dt^2 parts of N cancel in the remainder; only forces remain.
        std::vector<VecField> r(fbar.size());
        for (std::size_t i = 0; i < fbar.size(); ++i) {
            const GridImmersion base = base_at(fbar, i, cfg, reference);
            VecField shifted(m);
            for (std::size_t j = 0; j < m; ++j)
                shifted[j] = base.positions[j] + sigma * h.value[i][j];
            const GridImmersion pert = with_reference(shifted, reference);
            const VecField f_pert = model.force(pert);
            const VecField f_base = model.force(base);
            const VecField df = model.dforce(base, h.value[i]);
            r[i].resize(m);
            for (std::size_t j = 0; j < m; ++j)
                r[i][j] = -(f_pert[j] - f_base[j] - sigma * df[j]);
        }
        const double nrm = sup_sobolev_norm(r, cfg.s_bar);
        rep.remainder_norm.push_back(nrm);
        if (nrm > 0.0) {
            logs_sigma.push_back(std::log(sigma));
            logs_norm.push_back(std::log(nrm));
        }
    }
    rep.fitted_exponent = logs_sigma.size() >= 2 ? fit_slope(logs_sigma, logs_norm) : 0.0;

    // Quadratic coefficient against the second central difference of the
    // force at the first sample, direction h(0). A small probe sigma keeps
    // the cubic Taylor correction out of the comparison.
    {
        const double sigma = 0.01;
        const double delta = 1e-4;
        const GridImmersion base = base_at(fbar, 0, cfg, reference);
        auto shift = [&](double c) {
            VecField p(m);
            for (std::size_t j = 0; j < m; ++j)
                p[j] = base.positions[j] + c * h.value[0][j];
            return model.force(with_reference(std::move(p), reference));
        };
        const VecField fp = shift(delta);
        const VecField f0 = shift(0.0);
        const VecField fm = shift(-delta);
        const VecField fs = shift(sigma);
        const VecField dfh = model.dforce(base, h.value[0]);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const Vec2 quad_fd = (1.0 / (delta * delta)) * (fp[j] - 2.0 * f0[j] + fm[j]);
            const Vec2 half_d2 = 0.5 * quad_fd;
            const Vec2 r_lead = (1.0 / (sigma * sigma)) *
                                (-(fs[j] - f0[j] - sigma * dfh[j]));
            num += dot(r_lead + half_d2, r_lead + half_d2);
            den += dot(half_d2, half_d2);
        }
        rep.quadratic_match = den > 0.0 ? std::sqrt(num / den) : 0.0;
    }
    return rep;
}

} // namespace hmcf
