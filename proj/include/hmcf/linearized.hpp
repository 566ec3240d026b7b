#ifndef HMCF_LINEARIZED_HPP
#define HMCF_LINEARIZED_HPP

#include <cstddef>
#include <vector>

#include "hmcf/dynamics.hpp"
#include "hmcf/state.hpp"

namespace hmcf {

// The Frechet derivative of the evolution's right-hand side along a base
// curve-in-time B(t) = Fbar(t) + F0 + t F1. Applying it to a perturbation h
// gives the spatial part of the linearized equation
//   d^2 h / dt^2 = (dforce at base)(h) + forcing.
struct LinearizedOperator {
    ForceModel model;
    std::vector<double> times;
    std::vector<GridImmersion> base;  // one entry (steady) or one per time

    bool steady() const { return base.size() == 1; }
    const GridImmersion& base_at(std::size_t i) const { return steady() ? base[0] : base[i]; }

    VecField apply(std::size_t i, const VecField& h) const {
        return model.dforce(base_at(i), h);
    }

    // Time-independent base on an explicit time grid.
    static LinearizedOperator steady_base(GridImmersion B, ForceModel model,
                                          std::vector<double> times);

    // Base along an iterate: B(t_i) = fbar(t_i) + F0 + t_i F1, carrying the
    // reference density of F0.
    static LinearizedOperator along(const FieldHistory& fbar, const VecField& F0,
                                    const VecField& F1, const RealField& reference,
                                    ForceModel model);
};

// Coefficients of the linearized force written in frame components
// h = u nu + r tau (normal scalar u, tangential coefficient r against the
// unnormalized tangent). The normal projection is a wave operator in u with
// first-order coupling to r plus one rank-one nonlocal term from the volume
// variation; the tangential projection carries no second derivatives at all,
// which is the weak hyperbolicity of the system.
//
//   <L h, nu> = a u'' + c_ux u' + c_u u + c_rx r' + c_r r
//               + w_nl * sum_j (ku u + kux u' + kr r + krx r')_j
//   <L h, T>  = o_ux u' + o_r r
struct WeakHyperbolicCoefficients {
    VecField frame_normal, frame_unit_tangent;
    VecField frame_tangent;   // tau of the effective immersion (decomposition)
    RealField metric;         // g of the effective immersion
    RealField a;              // principal coefficient (dmu_t/dmu) v g^{-1}
    RealField c_ux, c_u, c_rx, c_r;
    RealField w_nl;           // nonlocal amplitude, -(dmu_t/dmu) rho / Vol^2
    RealField ku, kux, kr, krx;
    RealField o_ux, o_r;
    double rho0 = 0.0, rho1 = 0.0; // min/max of a; rho0 > 0 is ellipticity

    // Decompose h against the stored frame.
    std::pair<RealField, RealField> decompose(const VecField& h) const;

    // Apply the coefficient form to components (u, r).
    VecField apply(const RealField& u, const RealField& r) const;
};

WeakHyperbolicCoefficients assemble_coefficients(const LinearizedOperator& op,
                                                 std::size_t sample);

// Method-of-lines solve of  h'' = L(t) h + W(t),  h(0) = h0, h'(0) = h1,
// velocity-Verlet in time on the operator's grid, spectral in space.
// Throws ConfigError when the grid spacing violates the CFL bound of the
// frozen principal symbol.
FieldHistory solve_linearized(const LinearizedOperator& op,
                              const std::vector<VecField>& forcing,
                              const VecField& h0, const VecField& h1);

} // namespace hmcf

#endif
