#include "hmcf/state.hpp"

#include <algorithm>
#include <cmath>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf {

FieldHistory FieldHistory::zeros(const std::vector<double>& times, std::size_t m) {
    FieldHistory h;
    h.t = times;
    h.value.assign(times.size(), VecField(m));
    h.rate.assign(times.size(), VecField(m));
    h.accel.assign(times.size(), VecField(m));
    return h;
}

void FieldHistory::add(const FieldHistory& other) {
    if (other.size() != size()) throw ConfigError("field histories live on different grids");
    for (std::size_t i = 0; i < size(); ++i) {
        axpy(1.0, other.value[i], value[i]);
        axpy(1.0, other.rate[i], rate[i]);
        axpy(1.0, other.accel[i], accel[i]);
    }
}

namespace {

double three_term(const VecField& f, const VecField& df, const VecField& ddf, double s) {
    return spectral::sobolev_norm(f, s) + spectral::sobolev_norm(df, s - 1.0) +
           spectral::sobolev_norm(ddf, s - 2.0);
}

void require_order(double s) {
    if (s < 2.0) throw ConfigError("spacetime norm needs s >= 2 (the i = 2 term)");
}

} // namespace

double spacetime_norm(const Trajectory& traj, double s, double horizon) {
    require_order(s);
    if (traj.samples.empty()) throw ConfigError("spacetime norm of an empty trajectory");
    if (traj.back_time() < horizon - 1e-12)
        throw ConfigError("trajectory does not cover the requested horizon");
    double sup = 0.0;
    for (const auto& st : traj.samples) {
        if (st.t > horizon + 1e-12) break;
        sup = std::max(sup, three_term(st.F.positions, st.V, st.A, s));
    }
    return sup;
}

double spacetime_norm(const FieldHistory& h, double s, double horizon) {
    require_order(s);
    if (h.t.empty()) throw ConfigError("spacetime norm of an empty history");
    double sup = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h.t[i] > horizon + 1e-12) break;
        sup = std::max(sup, three_term(h.value[i], h.rate[i], h.accel[i], s));
    }
    return sup;
}

double sup_sobolev_norm(const std::vector<VecField>& series, double s) {
    double sup = 0.0;
    for (const auto& f : series) sup = std::max(sup, spectral::sobolev_norm(f, s));
    return sup;
}

FieldHistory difference(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) throw ConfigError("trajectories have different sample counts");
    FieldHistory d;
    d.t.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::fabs(a.samples[i].t - b.samples[i].t) > 1e-12)
            throw ConfigError("trajectories sampled at different times");
        d.t.push_back(a.samples[i].t);
        d.value.push_back(a.samples[i].F.positions - b.samples[i].F.positions);
        d.rate.push_back(a.samples[i].V - b.samples[i].V);
        d.accel.push_back(a.samples[i].A - b.samples[i].A);
    }
    return d;
}

} // namespace hmcf
