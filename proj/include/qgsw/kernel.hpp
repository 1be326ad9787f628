#pragma once

#include <array>
#include <vector>

#include "qgsw/fft.hpp"
#include "qgsw/quadrature.hpp"
#include "qgsw/state.hpp"

namespace qgsw::kernel {

// Green's function of (1 - Laplacian) in the plane under the transform
// convention: G(r) = 2 pi K0(r).
double green(double r);

// Lab-frame velocity of the front:
//   2 pi [q] int (phi_x(x) - phi_x(x+z)) K0(sqrt(z^2 + (phi(x) - phi(x+z))^2)) dz.
// Shifted samples phi(x+z) come from band-limited interpolation.
std::vector<double> rhs_full(const FrontState& state, const QuadratureSpec& quad = {});

// Nonlinear part, with K0(sqrt(z^2+d^2)) replaced by K0(sqrt(z^2+d^2)) - K0(|z|).
std::vector<double> rhs_nonlinear(const FrontState& state, const QuadratureSpec& quad = {});

// Nonlinear part with the kernel increment replaced by its expansion
// sum_{mu <= mu_max} C_mu(z) d^{2 mu}; mu_max = 1 is the cubic term.
std::vector<double> rhs_series(const FrontState& state, int mu_max, const QuadratureSpec& quad = {});

// Symbol of the linear part of rhs_full:
//   2 pi^2 [q] i xi (1 - (1 + xi^2)^{-1/2}).
cplx contour_linear_symbol(double xi, double jump);

// Linear part of rhs_full applied spectrally.
std::vector<double> contour_linear(const FrontState& state);

struct VelocityQuadrature {
    int panels = 48;
    int nodes_per_panel = 12;
    double z_max = 40.0;
};

// u(x, y) = -([q] / (2 pi)^2) int G(x - s, y - phi(s)) (1, phi_s) ds.
// The (2 pi)^{-2} matches the transform convention of G.
std::vector<std::array<double, 2>> velocity_field(const FrontState& state,
                                                  const std::vector<std::array<double, 2>>& points,
                                                  const VelocityQuadrature& quad = {});

// Closed form for the flat front: -(1/2) [q] e^{-|y|}.
double steady_velocity(double y, double jump);

}  // namespace qgsw::kernel
