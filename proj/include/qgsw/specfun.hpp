#pragma once

#include <vector>

namespace qgsw::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209;
inline constexpr int k0_max_derivative_order = 8;
inline constexpr int default_mu_max = 3;
inline constexpr int max_supported_mu = 8;
inline constexpr double i0_max_argument = 50.0;

// Modified Bessel function of the second kind, order zero. Power series for
// x <= 2, Temme's convergent large-argument series (continued fraction CF2)
// above.
double k0(double x);

// K1(x) = -K0'(x).
double k1(double x);

// n-th derivative of K0 at x > 0, n <= k0_max_derivative_order.
double k0_derivative(int n, double x);

// All derivatives K0^{(0..n)}(x) at once; the recurrence makes this the same
// cost as the highest one.
std::vector<double> k0_derivatives(int n, double x);

// Modified Bessel function of the first kind, order zero, |x| <= 50.
double i0(double x);

// Combinatorial tables shared by the expansion coefficients.
//   K0(sqrt(z^2 + d^2)) - K0(|z|) = sum_{mu>=1} C_mu(z) d^{2 mu}
// with C_mu = A_mu for |z| > 1 and C_mu = B_mu for 0 < |z| < 1.
class SeriesCoeffTable {
public:
    SeriesCoeffTable(int mu_max, int max_k);

    int mu_max() const noexcept { return mu_max_; }
    int max_k() const noexcept { return max_k_; }

    // binom(1/2, l), l >= 0.
    double half_binomial(int l) const { return half_binom_.at(l); }
    // b_k = H_k / ((k!)^2 4^k), the regular part of the K0 series.
    double b(int k) const { return b_.at(k); }
    // c_k = 1 / ((k!)^2 4^k), the I0 series.
    double c(int k) const { return c_.at(k); }
    // W(mu, k) = sum over i with |i| = k, sum_l l*i_l = mu of
    //            multinomial(k; i) prod_l binom(1/2, l)^{i_l}.
    double weight(int mu, int k) const { return weight_.at(mu).at(k); }

    static const SeriesCoeffTable& shared();

private:
    int mu_max_;
    int max_k_;
    std::vector<double> half_binom_;
    std::vector<double> b_;
    std::vector<double> c_;
    std::vector<std::vector<double>> weight_;
};

// Long-range expansion coefficient, |zeta| > 1, mu <= mu_max.
double a_coeff(int mu, double zeta, int mu_max = default_mu_max);

// Short-range expansion coefficient, 0 < |zeta| < 1. Evaluated from the
// closed-form split of the K0 series into log and regular parts.
double b_coeff(int mu, double zeta, int mu_max = default_mu_max);

// The same closed form with an additional -(1/2)(-1)^{mu-1} I0 / (mu z^{2 mu})
// term, as the formula is sometimes written. Kept only to quantify the
// discrepancy against b_coeff.
double b_coeff_with_extra_term(int mu, double zeta);

// C_mu(zeta) for any zeta != 0, choosing whichever representation is
// accurate at |zeta| (closed series for |zeta| <= 1.5, derivative sum above).
double taylor_coeff(int mu, double zeta);

// K0(sqrt(zeta^2 + delta^2)) - K0(|zeta|) without cancellation for small delta.
double k0_increment(double zeta, double delta);

namespace testing {
// Adds a relative perturbation to k0/k1 output. Used only to exercise the
// self-verification failure path.
void set_k0_perturbation(double rel);
double k0_perturbation();
}  // namespace testing

}  // namespace qgsw::specfun
