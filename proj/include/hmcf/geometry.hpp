#ifndef HMCF_GEOMETRY_HPP
#define HMCF_GEOMETRY_HPP

#include <cstddef>
#include <utility>

#include "hmcf/vec2.hpp"

namespace hmcf {

// Periodic samples of a closed plane curve together with the frozen density
// m_j = |dF0/dtheta|(theta_j) of the reference measure d mu = m dtheta.
//
// Sign and orientation conventions (anchored by the unit circle):
//   tangent tau = dF/dtheta, unit tangent T = tau/|tau|, outward normal
//   nu = rot(T) = (T_y, -T_x) for counterclockwise curves, second fundamental
//   form htilde = -<F_thth, nu>, mean curvature H = htilde / g, so a circle of
//   radius r has H = 1/r with nu pointing outward.
struct GridImmersion {
    VecField positions;
    RealField reference_density;

    std::size_t size() const { return positions.size(); }

    // Immersion threshold: 1e-6 times the mean reference density.
    double degeneracy_threshold() const;
};

// Freeze the reference measure from the immersion itself (d mu = d mu_0).
GridImmersion make_immersion(VecField positions);

// Reuse an existing reference density (evolving curve, fixed measure).
GridImmersion with_reference(VecField positions, RealField reference_density);

// All pointwise geometric fields of an immersion, computed spectrally.
// Construction throws DegeneracyError when min |tau| falls below the
// immersion threshold.
struct GeometryBundle {
    VecField tangent;          // tau
    VecField unit_tangent;     // T
    VecField normal;           // nu, outward for counterclockwise curves
    VecField second_deriv;     // F_thth
    RealField metric;          // g = |tau|^2
    RealField sqrt_metric;     // sqrt(g)
    RealField second_form;     // htilde = -<F_thth, nu>
    RealField mean_curvature;  // H = htilde / g
    RealField measure_ratio;   // d mu_t / d mu = sqrt(g) / m
    double volume = 0.0;       // enclosed area, (1/2) oint <F, rot(tau)> dtheta
    int turning_number = 0;    // winding of the tangent; +-1 for simple curves
};

GeometryBundle geometry_of(const GridImmersion& F);

VecField outward_normal(const GridImmersion& F);
RealField mean_curvature(const GridImmersion& F);
double enclosed_volume(const GridImmersion& F);
RealField measure_ratio(const GridImmersion& F);

// grad f = g^{-1} (df/dtheta) tau, tangential by construction.
VecField surface_gradient(const GridImmersion& F, const RealField& f);

// Laplace-Beltrami: (1/sqrt g) d/dtheta( (1/sqrt g) df/dtheta ).
RealField laplace_beltrami(const GridImmersion& F, const RealField& f);

// h = u nu + h_top with <h_top, nu> = 0; returns (u, h_top).
std::pair<RealField, VecField> decompose(const GridImmersion& F, const VecField& h);

} // namespace hmcf

#endif
