#include "qgsw/specfun.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "qgsw/error.hpp"

namespace qgsw::specfun {

namespace {

constexpr double series_switch = 2.0;
constexpr int series_terms_max = 60;
constexpr double eps = std::numeric_limits<double>::epsilon();

std::atomic<double> g_perturbation{0.0};

struct K0K1 {
    double k0, k1;
};

// Power series: K0 = -(ln(x/2) + gamma) I0 + sum_k H_k q^k/(k!)^2, q = x^2/4.
K0K1 small_x(double x) {
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x) + euler_gamma;
    double term = 1.0, h = 0.0;
    double s_i = 1.0, s_b = 0.0, s_ki = 0.0, s_kb = 0.0;
    for (int k = 1; k <= series_terms_max; ++k) {
        term *= q / (double(k) * k);
        h += 1.0 / k;
        s_i += term;
        s_b += h * term;
        s_ki += k * term;
        s_kb += k * h * term;
        if (term < 1e-18 * s_i) break;
    }
    K0K1 r;
    r.k0 = -lg * s_i + s_b;
    // K1 = -K0' = I0/x + (2/x)(lg sum k t_k - sum k H_k t_k)
    r.k1 = (s_i + 2.0 * (lg * s_ki - s_kb)) / x;
    return r;
}

// Temme's method for x >= 2 (continued fraction CF2 with Steed's algorithm,
// order zero).
K0K1 large_x(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    K0K1 r;
    r.k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    r.k1 = r.k0 * (x + 0.5 - h) / x;
    return r;
}

K0K1 k0k1(double x) {
    if (!(x > 0.0)) throw DomainError("K0: argument must be positive, got " + std::to_string(x));
    if (std::isinf(x)) return {0.0, 0.0};
    K0K1 r = x <= series_switch ? small_x(x) : large_x(x);
    const double p = g_perturbation.load(std::memory_order_relaxed);
    if (p != 0.0) {
        r.k0 *= 1.0 + p;
        r.k1 *= 1.0 + p;
    }
    return r;
}

double binom_int(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Sum_{k>=m} coef(k) binom(k, m) u^{k-m}.
template <class Coef>
double shifted_series(Coef&& coef, int max_k, int m, double u) {
    double s = 0.0, up = 1.0;
    for (int k = m; k <= max_k; ++k) {
        const double t = coef(k) * binom_int(k, m) * up;
        s += t;
        if (k > m + 4 && std::abs(t) < 1e-18 * std::abs(s)) break;
        up *= u;
    }
    return s;
}

double b_closed(int mu, double z, bool extra_term) {
    const auto& tab = SeriesCoeffTable::shared();
    const int kmax = tab.max_k();
    auto c = [&tab](int k) { return tab.c(k); };
    auto b = [&tab](int k) { return tab.b(k); };
    const double u = z * z;
    const double lg = std::log(0.5 * z) + euler_gamma;
    double r = -lg * shifted_series(c, kmax, mu, u) + shifted_series(b, kmax, mu, u);
    double um = 1.0;
    for (int m = 1; m <= mu; ++m) {
        um *= u;
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        r -= 0.5 * sign / (m * um) * shifted_series(c, kmax, mu - m, u);
    }
    if (extra_term) {
        const double sign = (mu % 2 == 1) ? 1.0 : -1.0;
        r -= 0.5 * sign * shifted_series(c, kmax, 0, u) / (mu * std::pow(u, mu));
    }
    return r;
}

double a_sum(int mu, double z) {
    const auto& tab = SeriesCoeffTable::shared();
    const auto d = k0_derivatives(mu, z);
    double r = 0.0, fact = 1.0;
    for (int k = 1; k <= mu; ++k) {
        fact *= k;
        r += tab.weight(mu, k) / fact * d[k] * std::pow(z, k - 2 * mu);
    }
    return r;
}

void check_mu(int mu, int mu_max) {
    if (mu < 1) throw DomainError("expansion order must be positive");
    if (mu > mu_max || mu > max_supported_mu)
        throw UnsupportedOrderError("expansion order " + std::to_string(mu) + " exceeds maximum " +
                                    std::to_string(std::min(mu_max, max_supported_mu)));
}

}  // namespace

double k0(double x) { return k0k1(x).k0; }

double k1(double x) { return k0k1(x).k1; }

std::vector<double> k0_derivatives(int n, double x) {
    if (n < 0 || n > k0_max_derivative_order)
        throw UnsupportedOrderError("K0 derivative order " + std::to_string(n) + " not supported (max " +
                                    std::to_string(k0_max_derivative_order) + ")");
    const K0K1 base = k0k1(x);
    std::vector<double> y(std::max(n + 1, 2));
    y[0] = base.k0;
    y[1] = -base.k1;
    // x y^{(m+2)} = -(m+1) y^{(m+1)} + x y^{(m)} + m y^{(m-1)}, with y^{(-1)} unused at m = 0.
    for (int m = 0; m + 2 <= n; ++m) {
        const double prev = m >= 1 ? y[m - 1] : 0.0;
        y[m + 2] = (-(m + 1) * y[m + 1] + x * y[m] + m * prev) / x;
    }
    y.resize(n + 1);
    return y;
}

double k0_derivative(int n, double x) { return k0_derivatives(n, x)[n]; }

double i0(double x) {
    if (std::isnan(x)) throw DomainError("I0: NaN argument");
    if (std::abs(x) > i0_max_argument)
        throw RangeError("I0: |x| = " + std::to_string(std::abs(x)) + " exceeds supported range 50");
    const double q = 0.25 * x * x;
    double term = 1.0, s = 1.0;
    for (int k = 1; k < 400; ++k) {
        term *= q / (double(k) * k);
        s += term;
        if (term < eps * s * 0.25) break;
    }
    return s;
}

SeriesCoeffTable::SeriesCoeffTable(int mu_max, int max_k) : mu_max_(mu_max), max_k_(max_k) {
    half_binom_.assign(std::max(mu_max, 1) + 1, 0.0);
    half_binom_[0] = 1.0;
    for (int l = 1; l < int(half_binom_.size()); ++l)
        half_binom_[l] = half_binom_[l - 1] * (0.5 - (l - 1)) / l;

    b_.assign(max_k + 1, 0.0);
    c_.assign(max_k + 1, 0.0);
    double inv = 1.0, h = 0.0;
    c_[0] = 1.0;
    for (int k = 1; k <= max_k; ++k) {
        inv /= 4.0 * double(k) * k;
        h += 1.0 / k;
        c_[k] = inv;
        b_[k] = h * inv;
    }

    // Enumerate multiplicity vectors (i_1..i_mu) with sum l*i_l = mu.
    weight_.assign(mu_max + 1, std::vector<double>(mu_max + 1, 0.0));
    std::vector<double> fact(mu_max + 1, 1.0);
    for (int i = 1; i <= mu_max; ++i) fact[i] = fact[i - 1] * i;
    std::vector<int> mult(mu_max + 1, 0);
    std::function<void(int, int, int)> rec = [&](int mu, int l, int remaining) {
        if (remaining == 0) {
            int k = 0;
            double w = 1.0, denom = 1.0;
            for (int p = 1; p <= mu; ++p) {
                k += mult[p];
                denom *= fact[mult[p]];
                w *= std::pow(half_binom_[p], mult[p]);
            }
            weight_[mu][k] += fact[k] / denom * w;
            return;
        }
        if (l > remaining) return;
        for (int i = 0; i * l <= remaining; ++i) {
            mult[l] = i;
            rec(mu, l + 1, remaining - i * l);
        }
        mult[l] = 0;
    };
    for (int mu = 1; mu <= mu_max; ++mu) rec(mu, 1, mu);
}

const SeriesCoeffTable& SeriesCoeffTable::shared() {
    static const SeriesCoeffTable table(max_supported_mu, 80);
    return table;
}

double a_coeff(int mu, double zeta, int mu_max) {
    check_mu(mu, mu_max);
    const double z = std::abs(zeta);
    if (!(z > 1.0)) throw DomainError("A coefficient requires |zeta| > 1");
    return a_sum(mu, z);
}

double b_coeff(int mu, double zeta, int mu_max) {
    check_mu(mu, mu_max);
    const double z = std::abs(zeta);
    if (z == 0.0) throw SingularityError("B coefficient is singular at zeta = 0");
    if (!(z < 1.0)) throw DomainError("B coefficient requires |zeta| < 1");
    return b_closed(mu, z, false);
}

double b_coeff_with_extra_term(int mu, double zeta) {
    check_mu(mu, max_supported_mu);
    const double z = std::abs(zeta);
    if (z == 0.0) throw SingularityError("B coefficient is singular at zeta = 0");
    return b_closed(mu, z, true);
}

double taylor_coeff(int mu, double zeta) {
    check_mu(mu, max_supported_mu);
    const double z = std::abs(zeta);
    if (z == 0.0) throw SingularityError("expansion coefficient is singular at zeta = 0");
    return z <= 1.5 ? b_closed(mu, z, false) : a_sum(mu, z);
}

double k0_increment(double zeta, double delta) {
    const double z = std::abs(zeta);
    if (z == 0.0) throw SingularityError("kernel increment is singular at zeta = 0");
    if (delta == 0.0) return 0.0;
    const double d2 = (delta / z) * (delta / z);
    const double r = z * std::sqrt(1.0 + d2);
    if (r > series_switch) return k0(r) - k0(z);

    // Both arguments in the series region: difference the series termwise.
    const double lp = std::log1p(d2);
    const double qz = 0.25 * z * z;
    const double qr = 0.25 * r * r;
    double pz = 1.0, pr = 1.0, h = 0.0;
    double d_i = 0.0, d_b = 0.0, i_r = 1.0;
    for (int k = 1; k <= series_terms_max; ++k) {
        const double kk = double(k) * k;
        pz *= qz / kk;
        pr *= qr / kk;
        h += 1.0 / k;
        const double diff = pz * std::expm1(k * lp);
        d_i += diff;
        d_b += h * diff;
        i_r += pr;
        if (pr < 1e-18 * i_r) break;
    }
    double res = -0.5 * lp * i_r - (std::log(0.5 * z) + euler_gamma) * d_i + d_b;
    const double p = g_perturbation.load(std::memory_order_relaxed);
    if (p != 0.0) res *= 1.0 + p;
    return res;
}

namespace testing {
void set_k0_perturbation(double rel) { g_perturbation.store(rel); }
double k0_perturbation() { return g_perturbation.load(); }
}  // namespace testing

}  // namespace qgsw::specfun
