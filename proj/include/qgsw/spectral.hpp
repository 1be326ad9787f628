#pragma once

#include <span>
#include <vector>

#include "qgsw/fft.hpp"
#include "qgsw/state.hpp"

namespace qgsw {

// Fourier coefficients under f(x) = int fhat(xi) e^{i xi x} dxi,
// fhat(xi) = (1/2pi) int f(x) e^{-i xi x} dx, sampled at xi_m = pi m / L.
// Storage is FFT order (see Grid::xi).
struct SpectralField {
    Grid grid;
    std::vector<cplx> coeffs;

    double xi(int m) const { return grid.xi(m); }
    size_t size() const { return coeffs.size(); }
};

SpectralField transform(const Grid& grid, std::span<const double> values);
SpectralField transform(const FrontState& state);
SpectralField transform_complex(const Grid& grid, std::span<const cplx> values);
std::vector<double> inverse(const SpectralField& f);
std::vector<cplx> inverse_complex(const SpectralField& f);

// Base cutoff: 1 on |xi| <= 5/4, 0 on |xi| >= 8/5, exp(-1/t) blend between.
double psi_base(double xi);
// psi_k(xi) = psi(xi / 2^k) - psi(xi / 2^{k-1}).
double dyadic_cutoff(int k, double xi);
// psi_{<=k}(xi) = psi(xi / 2^k).
double low_cutoff(int k, double xi);

// Dyadic indices whose annulus meets the nonzero grid frequencies.
struct DyadicRange {
    int lo, hi;
};
DyadicRange dyadic_range(const Grid& grid);

SpectralField project(int k, const SpectralField& f);
SpectralField project_low(int k, const SpectralField& f);

struct NormSpec {
    enum class Kind { sobolev, z, bab };
    Kind kind = Kind::sobolev;
    double a = 8.0;   // s for sobolev, r for z, a for bab
    double b = 0.0;   // w for z, b for bab

    static NormSpec sobolev(double s) { return {Kind::sobolev, s, 0.0}; }
    static NormSpec z(double r = 0.4, double w = 11.0) { return {Kind::z, r, w}; }
    static NormSpec bab(double a, double b) { return {Kind::bab, a, b}; }
    void validate() const;
};

// sobolev: (sum (1+xi^2)^s |fhat|^2 dxi)^{1/2}, so sobolev(0) = |f|_{L2} / sqrt(2 pi).
// z:       max over grid frequencies of (|xi|^r + |xi|^w) |fhat|.
// bab:     sum_j (2^{aj} + 2^{bj}) sup|P_j f| with sup on a 4x padded grid.
double norm(const SpectralField& f, const NormSpec& spec);

// max |f| evaluated on a zero-padded grid with `pad` times the points.
double sup_norm(const SpectralField& f, int pad = 4);
// sqrt(sum |f_j|^2 dx)
double l2_norm(const Grid& grid, std::span<const double> values);

// Derivatives of p(xi) = -xi (1+xi^2)^{-1/2}, order 0..3.
double dispersion(double xi, int order = 0);

struct DispersionSpec {
    // Transport speed removed by the moving frame.
    static constexpr double frame_shift = 2.0 * std::numbers::pi;
    static double p(double xi) { return dispersion(xi, 0); }
    static double dp(double xi) { return dispersion(xi, 1); }
    static double d2p(double xi) { return dispersion(xi, 2); }
    static double d3p(double xi) { return dispersion(xi, 3); }
};

// Multiply by e^{-i t p(xi)}.
SpectralField to_profile(const FrontState& state);
SpectralField to_profile(const SpectralField& phi_hat, double t);
// Inverse of to_profile: multiply by e^{+i t p(xi)}.
SpectralField from_profile(const SpectralField& h_hat, double t);

// Coefficientwise multiply by a symbol m(xi). Odd symbols should pass
// odd = true so the unpaired Nyquist coefficient is dropped and the field
// stays real.
template <class F>
void apply_multiplier(SpectralField& f, F&& m, bool odd = false) {
    const int n = f.grid.n;
    for (int i = 0; i < n; ++i) f.coeffs[i] *= m(f.grid.xi(i));
    if (odd) f.coeffs[n / 2] = 0.0;
}

// Spectral derivative of a real field.
std::vector<double> derivative(const Grid& grid, std::span<const double> values);

}  // namespace qgsw
