#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "qgsw/error.hpp"
#include "qgsw/kernel.hpp"
#include "qgsw/specfun.hpp"
#include "qgsw/spectral.hpp"
#include "qgsw/symbols.hpp"

using namespace qgsw;

namespace {

constexpr double pi = std::numbers::pi;

FrontState front(const Grid& g, Frame frame, auto f) {
    FrontState s;
    s.grid = g;
    s.frame = frame;
    s.values.resize(g.n);
    for (int j = 0; j < g.n; ++j) s.values[j] = f(g.x(j));
    return s;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_SUITE("kernel") {
    TEST_CASE("green is 2 pi K0") {
        for (double r : {0.1, 1.0, 5.0}) CHECK(std::abs(kernel::green(r) / specfun::k0(r) - 2.0 * pi) < 1e-13);
        CHECK_THROWS_AS(kernel::green(0.0), DomainError);
    }

    TEST_CASE("K0 is half the inverse transform of (1+xi^2)^{-1/2}") {
        // (1/2) int_R e^{i xi x} (1+xi^2)^{-1/2} d xi = int_0^inf cos(xi x) (1+xi^2)^{-1/2} d xi
        boost::math::quadrature::ooura_fourier_cos<double> q;
        const auto [value, err] = q.integrate([](double xi) { return 1.0 / std::sqrt(1.0 + xi * xi); }, 1.0);
        CHECK(std::abs(value - specfun::k0(1.0)) < 1e-6);
    }

    TEST_CASE("2 int K0 = 2 pi with the kernel rule") {
        double s = 0.0;
        for (const auto& nd : QuadratureSpec{}.half_line_nodes()) s += nd.weight * 2.0 * specfun::k0(nd.zeta);
        CHECK(std::abs(2.0 * s - 2.0 * pi) < 1e-8);
    }

    TEST_CASE("constant front has zero velocity") {
        const Grid g{128, 16.0 * pi};
        CHECK(max_abs(kernel::rhs_full(front(g, Frame::lab, [](double) { return 0.3; }))) < 1e-14);
        CHECK(max_abs(kernel::rhs_nonlinear(front(g, Frame::moving, [](double) { return 0.3; }))) < 1e-14);
    }

    TEST_CASE("frame preconditions") {
        const Grid g{64, 16.0 * pi};
        CHECK_THROWS_AS(kernel::rhs_full(front(g, Frame::moving, [](double) { return 0.0; })), DomainError);
        CHECK_THROWS_AS(kernel::rhs_nonlinear(front(g, Frame::lab, [](double) { return 0.0; })), DomainError);
    }

    TEST_CASE("linear response of the contour integral") {
        const Grid g{256, 16.0 * pi};
        const double eps = 1e-6, jump = 1.0 / pi;
        for (double k : {0.5, 1.0, 4.0}) {
            const auto s = front(g, Frame::lab, [&](double x) { return eps * std::sin(k * x); });
            const auto r = kernel::rhs_full(s);
            // sin -> response i*omega*sin = omega cos for a purely imaginary symbol i*omega.
            const double omega = kernel::contour_linear_symbol(k, jump).imag();
            double err = 0.0;
            for (int j = 0; j < g.n; ++j) err = std::max(err, std::abs(r[j] - eps * omega * std::cos(k * g.x(j))));
            CHECK(err / (eps * std::abs(omega)) < 1e-4);
            CHECK(std::abs(omega - 2.0 * pi * k * (1.0 - 1.0 / std::sqrt(1.0 + k * k))) < 1e-13);
        }
    }

    TEST_CASE("full = linear + nonlinear decomposition") {
        const Grid g{256, 16.0 * pi};
        auto bump = [](double x) { return 0.4 * std::exp(-x * x / 4.0) + 0.1 * std::cos(0.5 * x) * std::exp(-x * x / 50.0); };
        const auto lab = front(g, Frame::lab, bump);
        const auto mov = front(g, Frame::moving, bump);
        const auto full = kernel::rhs_full(lab);
        const auto lin = kernel::contour_linear(lab);
        const auto nl = kernel::rhs_nonlinear(mov);
        std::vector<double> sum(g.n);
        for (int j = 0; j < g.n; ++j) sum[j] = lin[j] + nl[j];
        CHECK(max_diff(full, sum) < 1e-8);
    }

    TEST_CASE("inner refinement changes the result below 1e-9") {
        const Grid g{256, 16.0 * pi};
        const auto s = front(g, Frame::lab, [](double x) { return 0.3 * std::exp(-x * x / 4.0); });
        const QuadratureSpec q;
        CHECK(max_diff(kernel::rhs_full(s, q), kernel::rhs_full(s, q.refined_inner())) < 1e-9);
    }

    TEST_CASE("quadrature error decreases under refinement") {
        const Grid g{128, 16.0 * pi};
        const auto s = front(g, Frame::lab, [](double x) { return 0.3 * std::exp(-x * x / 4.0); });
        QuadratureSpec coarse;
        coarse.inner_panel_nodes = 4;
        coarse.outer_panel_nodes = 4;
        const auto r0 = kernel::rhs_full(s, coarse);
        const auto r1 = kernel::rhs_full(s, coarse.refined());
        const auto r2 = kernel::rhs_full(s, coarse.refined().refined());
        const double d01 = max_diff(r0, r1), d12 = max_diff(r1, r2);
        CHECK((d12 < d01 || d12 < 1e-12));
    }

    TEST_CASE("verification pass raises on disagreement") {
        const Grid g{64, 16.0 * pi};
        const auto s = front(g, Frame::lab, [](double x) { return 0.5 * std::exp(-x * x); });
        QuadratureSpec q;
        q.inner_panel_nodes = 2;
        q.outer_panel_nodes = 2;
        q.verify = true;
        q.tolerance = 1e-14;
        CHECK_THROWS_AS(kernel::rhs_full(s, q), AccuracyError);
    }

    TEST_CASE("even front gives an odd velocity") {
        const Grid g{128, 16.0 * pi};
        const auto s = front(g, Frame::lab, [](double x) { return 0.5 * std::exp(-x * x / 3.0); });
        const auto r = kernel::rhs_full(s);
        double worst = 0.0;
        for (int j = 1; j < g.n; ++j) worst = std::max(worst, std::abs(r[j] + r[g.n - j]));
        CHECK(worst < 1e-12 * std::max(1.0, max_abs(r)));
    }

    TEST_CASE("cubic term scales like eps^5 against the direct nonlinearity") {
        const Grid g{256, 16.0 * pi};
        auto err = [&](double eps) {
            const auto s = front(g, Frame::moving, [eps](double x) {
                return eps * (std::cos(0.5 * x) + 0.7 * std::cos(x + 0.3) + 0.4 * std::cos(1.5 * x + 1.0));
            });
            return max_diff(kernel::rhs_nonlinear(s), kernel::rhs_series(s, 1));
        };
        const double ratio = err(1e-2) / err(5e-3);
        CHECK(std::abs(std::log2(ratio) - 5.0) < 0.3);
    }

    TEST_CASE("steady velocity closed form") {
        CHECK(kernel::steady_velocity(0.0, 0.7) == doctest::Approx(-0.35).epsilon(1e-15));
        CHECK(kernel::steady_velocity(-1.3, 0.7) == kernel::steady_velocity(1.3, 0.7));
        CHECK(std::abs(kernel::steady_velocity(std::log(2.0), 1.0) + 0.25) < 1e-15);
    }

    TEST_CASE("velocity of the flat front") {
        FrontState s;
        s.values.assign(s.grid.n, 0.0);
        const auto u = kernel::velocity_field(s, {{0.0, 0.5}, {0.0, 1.0}, {0.0, 3.0}, {0.0, -2.0}, {0.0, 20.0}});
        const double ys[] = {0.5, 1.0, 3.0, -2.0};
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(u[i][0] - kernel::steady_velocity(ys[i], s.jump)) < 1e-6);
            CHECK(std::abs(u[i][1]) < 1e-10);
        }
        CHECK(std::hypot(u[4][0], u[4][1]) <= std::exp(-19.0));
    }

    TEST_CASE("velocity is continuous across a perturbed front") {
        const Grid g{4096, 16.0 * pi};
        auto shape = [](double x) { return 0.05 * std::exp(-x * x / 2.0); };
        const auto s = front(g, Frame::lab, shape);
        auto jump_at = [&](double x0, double off, double& size) {
            const double y0 = shape(x0);
            const auto u = kernel::velocity_field(s, {{x0, y0 + off}, {x0, y0 - off}});
            size = std::max(std::hypot(u[0][0], u[0][1]), std::hypot(u[1][0], u[1][1]));
            return std::hypot(u[0][0] - u[1][0], u[0][1] - u[1][1]);
        };
        for (double x0 : {0.0, 0.8}) {
            double size = 0.0, ignored = 0.0;
            const double j1 = jump_at(x0, 0.05, size);
            CHECK(j1 < 5e-3 * size);
            // The difference is first order in the offset, so it vanishes in the limit.
            const double j2 = jump_at(x0, 0.025, ignored);
            CHECK(j1 / j2 == doctest::Approx(2.0).epsilon(0.1));
        }
        CHECK_THROWS_AS(kernel::velocity_field(s, {{0.0, shape(0.0)}}), NearSingularityError);
    }
}
