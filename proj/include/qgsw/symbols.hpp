#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qgsw/fft.hpp"
#include "qgsw/quadrature.hpp"

namespace qgsw::symbols {

// T_mu(eta_1..eta_{2mu+1}) = 2 int prod_j (1 - e^{i eta_j z}) C_mu(z) dz with
// C_mu the kernel expansion coefficient (B_mu near 0, A_mu beyond, glued by
// the smooth cutoff psi). Evaluated by quadrature in z.
struct SymbolQuadrature {
    int panel_nodes = 12;
    double z_max = 40.0;
    double inner_s_max = 36.0;
};
double t_symbol(int mu, std::span<const double> etas, const SymbolQuadrature& quad = {});

// Closed form of the same symbol:
//   T_mu = (2 pi / (2mu)!) sum_{S subset} (-1)^{|S|} (1 + sigma_S^2)^{mu - 1/2},
// sigma_S the sum of the etas in S.
double t_symbol_closed(int mu, std::span<const double> etas);

struct PhasePoint {
    double eta1, eta2, xi;
    double phi;
    double d_eta1, d_eta2, d_xi;
};

// Phi(eta1, eta2, xi) = p(eta1) + p(eta2) + p(xi - eta1 - eta2) - p(xi) and its gradient.
PhasePoint phase_phi(double eta1, double eta2, double xi);

// 3 xi (1 + xi^2)^{-5/2} = p''(xi).
double frak_a(double xi);

// Remainder of the second-order expansion of the phase about the space-time
// resonance: Phi(xi+z1, xi+z2, xi) - (-A(xi) z1 z2). Cubic in (z1, z2).
double phi_expansion_error(double xi, double zeta1, double zeta2);

// Values of a multilinear symbol on a uniform grid covering the product of
// dyadic annuli |eta_i| in (5/8 2^{j_i}, 8/5 2^{j_i}). Row-major, last axis fastest.
struct SymbolSample {
    std::vector<int> blocks;
    std::vector<int> shape;
    std::vector<double> origin;
    std::vector<double> step;
    std::vector<cplx> values;
    std::string name;

    double coord(int axis, int i) const { return origin[axis] + i * step[axis]; }
    size_t dims() const { return shape.size(); }
};

using SymbolFn = std::function<cplx(std::span<const double>)>;

// Sample psi_{j_1}(eta_1)...psi_{j_n}(eta_n) m(eta) on `resolution` points per axis.
SymbolSample sample_block(std::span<const int> blocks, int resolution, const SymbolFn& m, std::string name,
                          bool with_cutoffs = true);

// Discrete approximation of the L1 norm of the inverse transform
// F^{-1}m(x) = int m(eta) e^{i eta x} d eta, computed with one n-dimensional FFT.
double s_infinity_estimate(const SymbolSample& sample);

// Right-hand side of the dyadic bound for the cubic symbol,
// 2^{j1+j2+j3} (1+2^{j1})^{-1} (1+2^{2 j2}) (1+2^{j2}) (1+2^{j3}).
double t1_block_bound(int j1, int j2, int j3);

// Sum of the three resonant values T_1(xi,xi,-xi) + T_1(xi,-xi,xi) + T_1(-xi,xi,xi),
// cached per xi.
double resonant_t1_sum(double xi);

enum class ThetaNormalization {
    as_stated,        // -(pi xi / (3 A)) S(xi)
    stationary_phase  // -(2 pi xi / (3 |A|)) S(xi), the rate predicted by a stationary-phase expansion
};

// Coefficient multiplying int_0^t |h(tau, xi)|^2 / (tau + 1) d tau. Zero at xi = 0.
double theta_coefficient(double xi, ThetaNormalization norm = ThetaNormalization::as_stated);

// Phase correction from samples (tau_k, |h(tau_k, xi)|^2), tau_0 = 0, using
// piecewise-linear |h|^2 integrated exactly against 1/(tau+1).
double theta_phase(std::span<const double> times, std::span<const double> h_abs2, double xi, double t,
                   ThetaNormalization norm = ThetaNormalization::as_stated);

// Tabular dump: block indices, grid coordinates, real and imaginary value.
void write_symbol_dump(const std::string& path, const SymbolSample& sample, int stride = 1);

}  // namespace qgsw::symbols
