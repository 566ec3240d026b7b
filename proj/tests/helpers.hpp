#ifndef HMCF_TEST_HELPERS_HPP
#define HMCF_TEST_HELPERS_HPP

#include <cmath>
#include <numbers>

#include "hmcf/config.hpp"
#include "hmcf/geometry.hpp"
#include "hmcf/potential.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf::test {

inline GridImmersion circle(std::size_t m, double r) {
    const auto th = spectral::grid_angles(m);
    VecField pos(m);
    for (std::size_t j = 0; j < m; ++j) pos[j] = {r * std::cos(th[j]), r * std::sin(th[j])};
    return make_immersion(std::move(pos));
}

// Band-limited star-shaped wiggle around a circle.
inline GridImmersion star(std::size_t m, double r, double amp, unsigned seed,
                          int kmin = 2, int kmax = 5) {
    const auto th = spectral::grid_angles(m);
    const RealField p = random_band_limited(m, kmin, kmax, seed);
    VecField pos(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double rr = r * (1.0 + amp * p[j]);
        pos[j] = {rr * std::cos(th[j]), rr * std::sin(th[j])};
    }
    return make_immersion(std::move(pos));
}

// The discrete inner-energy functional the force is the gradient of:
//   V_disc = sum_j v(s_j) sqrt(g_j) dtheta - rho log(Vol / vol0).
// Evaluated straight from the definitions; the acceleration must equal
// -(1 / (m_j dtheta)) dV_disc/dF_j.
inline double discrete_energy(const GridImmersion& F, const PotentialSpec& pot, double rho,
                              double vol0) {
    const std::size_t m = F.size();
    const double dth = spectral::grid_spacing(m);
    const GeometryBundle b = geometry_of(F);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double s = 0.5 * dot(F.positions[j], F.positions[j]);
        acc += v_of_s(pot, s) * b.sqrt_metric[j];
    }
    return acc * dth - rho * std::log(b.volume / vol0);
}

// Central-difference gradient oracle for the acceleration.
inline VecField fd_gradient_acceleration(const GridImmersion& F, const PotentialSpec& pot,
                                         double rho, double delta = 1e-6) {
    const std::size_t m = F.size();
    const double dth = spectral::grid_spacing(m);
    VecField out(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (int c = 0; c < 2; ++c) {
            VecField plus = F.positions, minus = F.positions;
            (c == 0 ? plus[j].x : plus[j].y) += delta;
            (c == 0 ? minus[j].x : minus[j].y) -= delta;
            const double ep = discrete_energy(with_reference(plus, F.reference_density),
                                              pot, rho, 1.0);
            const double em = discrete_energy(with_reference(minus, F.reference_density),
                                              pot, rho, 1.0);
            const double grad = (ep - em) / (2.0 * delta);
            const double a = -grad / (F.reference_density[j] * dth);
            if (c == 0)
                out[j].x = a;
            else
                out[j].y = a;
        }
    }
    return out;
}

} // namespace hmcf::test

#endif
