#ifndef HMCF_SPECTRAL_HPP
#define HMCF_SPECTRAL_HPP

//==============================================================================
// Periodic spectral calculus on the circle for power-of-two grids.
//   - Forward/backward transforms with the convention
//       u_hat[k] = (1/M) sum_j u_j exp(-i k theta_j),   theta_j = 2 pi j / M,
//     stored in FFT order (index i holds k = i for i < M/2, k = i - M for
//     i >= M/2; the Nyquist bin carries k = -M/2).
//   - Spectral derivatives (Nyquist bin zeroed on odd orders so real input
//     stays real and the derivative matrix is exactly skew-symmetric).
//   - Discrete Sobolev norms  ||u||_{H^s}^2 = sum_k (1+k^2)^s |u_hat[k]|^2.
//   - Smooth frequency truncation: bin k is scaled by S(N - |k|) with S the
//     quintic smoothstep, so modes |k| >= N vanish and |k| <= N-1 pass.
//==============================================================================

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hmcf/vec2.hpp"

namespace hmcf::spectral {

// Throws ConfigError unless m is a power of two with m >= 16.
void check_grid(std::size_t m);

// Mode number of FFT-order index i on a grid of m points.
int mode_number(std::size_t i, std::size_t m);

double grid_spacing(std::size_t m);                  // 2 pi / m
std::vector<double> grid_angles(std::size_t m);      // theta_j

std::vector<std::complex<double>> to_modes(std::span<const double> u);
std::vector<double> from_modes(std::span<const std::complex<double>> modes);

RealField derivative(std::span<const double> u, int order = 1);
VecField derivative(const VecField& u, int order = 1);

double sobolev_norm(std::span<const double> u, double s);
double sobolev_norm(const VecField& u, double s);

// Quintic smoothstep: 0 for x <= 0, 1 for x >= 1, 6x^5 - 15x^4 + 10x^3 between.
double smoothstep(double x);

RealField smooth_truncate(std::span<const double> u, double cutoff);
VecField smooth_truncate(const VecField& u, double cutoff);

// Sobolev order / time horizon pair used by the spacetime norms.
struct NormSpec {
    double s = 2.0;
    double horizon = 1.0;
};

} // namespace hmcf::spectral

#endif
