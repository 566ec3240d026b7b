#ifndef HMCF_STATE_HPP
#define HMCF_STATE_HPP

#include <string>
#include <vector>

#include "hmcf/geometry.hpp"
#include "hmcf/vec2.hpp"

namespace hmcf {

// One snapshot of the second-order evolution: positions, velocity, and the
// acceleration that the force produced at this state (cached so spacetime
// norms never finite-difference stored positions).
struct PhaseState {
    double t = 0.0;
    GridImmersion F;
    VecField V;
    VecField A;
};

struct Trajectory {
    std::vector<PhaseState> samples;
    bool completed = true;
    std::string abort_reason;

    std::size_t size() const { return samples.size(); }
    double front_time() const { return samples.front().t; }
    double back_time() const { return samples.back().t; }
};

// Time series of a plain 2-vector field with stored first and second time
// derivatives; used for perturbations, iterates, and manufactured solutions.
struct FieldHistory {
    std::vector<double> t;
    std::vector<VecField> value;
    std::vector<VecField> rate;
    std::vector<VecField> accel;

    std::size_t size() const { return t.size(); }

    static FieldHistory zeros(const std::vector<double>& times, std::size_t m);
    void add(const FieldHistory& other); // in-place sum, shared time grid
};

// The working spacetime norm: sup over stored samples in [0, T] of
//   sum_{i=0}^{2} || d^i/dt^i u (t) ||_{H^{s-i}},
// with time derivatives read from the stored rate/acceleration.
// Requires s >= 2 so the i = 2 term lands in a nonnegative order.
double spacetime_norm(const Trajectory& traj, double s, double horizon);
double spacetime_norm(const FieldHistory& h, double s, double horizon);

// Norm used for forcing/residual series, which carry no stored time
// derivatives: sup over samples of the spatial H^s norm (the i = 0 term).
double sup_sobolev_norm(const std::vector<VecField>& series, double s);

// Pointwise difference of two trajectories on the same time grid.
FieldHistory difference(const Trajectory& a, const Trajectory& b);

} // namespace hmcf

#endif
