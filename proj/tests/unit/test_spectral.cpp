#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgsw/error.hpp"
#include "qgsw/solver.hpp"
#include "qgsw/spectral.hpp"

using namespace qgsw;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> sample(const Grid& g, auto f) {
    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = f(g.x(j));
    return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

const auto bump = [](double x) { return std::exp(-x * x / 2.0) * (1.0 + 0.3 * std::sin(2.0 * x)); };

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("cos(kx) has mass 1/2 at +-k") {
        const Grid g{256, 16.0 * pi};
        const int m = 16;  // xi = 1
        const auto f = transform(g, sample(g, [](double x) { return std::cos(x); }));
        for (int i = 0; i < g.n; ++i) {
            const double expect = (i == m || i == g.n - m) ? 0.5 : 0.0;
            CHECK(std::abs(f.coeffs[i] * g.dxi() - expect) < 1e-13);
        }
    }

    TEST_CASE("round trip and Plancherel") {
        const Grid g{512, 16.0 * pi};
        const auto v = sample(g, bump);
        const auto f = transform(g, v);
        CHECK(max_diff(inverse(f), v) < 1e-12);
        double s = 0.0;
        for (const auto& c : f.coeffs) s += std::norm(c);
        const double l2 = l2_norm(g, v);
        CHECK(std::abs(2.0 * pi * s * g.dxi() - l2 * l2) < 1e-12 * l2 * l2);
        CHECK(std::abs(norm(f, NormSpec::sobolev(0.0)) - l2 / std::sqrt(2.0 * pi)) < 1e-12);
    }

    TEST_CASE("shape errors") {
        const Grid g{64, 16.0 * pi};
        CHECK_THROWS_AS(transform(g, std::vector<double>(63)), ShapeError);
        CHECK_THROWS_AS(inverse(SpectralField{g, std::vector<cplx>(32)}), ShapeError);
    }

    TEST_CASE("dyadic cutoffs form a partition of unity") {
        for (double xi : {1e-5, 0.013, 0.7, 1.0, 1.3, 1.55, 9.0, -42.0, 3e4}) {
            double s = 0.0;
            for (int k = -40; k <= 40; ++k) s += dyadic_cutoff(k, xi);
            CHECK(std::abs(s - 1.0) < 1e-14);
        }
        for (double xi = -3.0; xi <= 3.0; xi += 0.01) {
            const double v = low_cutoff(0, xi) + dyadic_cutoff(1, xi);
            CHECK(std::abs(v - low_cutoff(1, xi)) < 1e-15);
        }
    }

    TEST_CASE("dyadic cutoff support and scaling") {
        for (int k : {-3, 0, 2, 5}) {
            const double s = std::ldexp(1.0, k);
            for (double r = 0.01; r < 4.0; r += 0.0137) {
                const double v = dyadic_cutoff(k, r * s);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                if (r <= 0.625 || r >= 1.6) CHECK(v == 0.0);
            }
        }
        // |psi_k|_{L2} = 2^{k/2} |psi_0|_{L2}
        auto l2 = [](int k) {
            const double h = std::ldexp(1e-4, k);
            double s = 0.0;
            for (double xi = h / 2; xi < std::ldexp(2.0, k); xi += h) s += std::pow(dyadic_cutoff(k, xi), 2) * h;
            return std::sqrt(2.0 * s);
        };
        const double base = l2(0);
        CHECK(base > 0.5);
        CHECK(base < 1.5);
        for (int k : {-2, 1, 3}) CHECK(std::abs(l2(k) / (std::pow(2.0, k / 2.0) * base) - 1.0) < 1e-3);
    }

    TEST_CASE("projection of a single mode") {
        const Grid g{256, 16.0 * pi};
        const auto f = transform(g, sample(g, [](double x) { return std::cos(x); }));
        for (int k : {-1, 1}) CHECK(sup_norm(project(k, f)) < 1e-14);
        CHECK(std::abs(sup_norm(project(0, f)) - 1.0) < 1e-12);
    }

    TEST_CASE("littlewood-paley reconstruction") {
        const Grid g{512, 16.0 * pi};
        const auto v = sample(g, bump);
        const auto f = transform(g, v);
        const auto r = dyadic_range(g);
        CHECK(r.lo <= r.hi);
        auto acc = inverse(project_low(r.lo - 1, f));
        for (int k = r.lo; k <= r.hi + 1; ++k) {
            const auto p = inverse(project(k, f));
            for (int j = 0; j < g.n; ++j) acc[j] += p[j];
        }
        CHECK(max_diff(acc, v) < 1e-10);
    }

    TEST_CASE("norms") {
        const Grid g{256, 16.0 * pi};
        const auto f = transform(g, sample(g, bump));
        SpectralField zero{g, std::vector<cplx>(g.n, 0.0)};
        for (const auto& spec : {NormSpec::sobolev(2.0), NormSpec::z(), NormSpec::bab(1.0, 6.0)}) {
            CHECK(norm(zero, spec) == 0.0);
            SpectralField twice = f;
            for (auto& c : twice.coeffs) c *= -2.0;
            CHECK(std::abs(norm(twice, spec) - 2.0 * norm(f, spec)) < 1e-12 * norm(f, spec));
        }
        // B^{a,b} is the weighted sum of the sup norms of the pieces.
        const auto r = dyadic_range(g);
        double s = 0.0;
        for (int j = r.lo; j <= r.hi; ++j) s += (std::pow(2.0, j) + std::pow(2.0, 6.0 * j)) * sup_norm(project(j, f));
        CHECK(std::abs(norm(f, NormSpec::bab(1.0, 6.0)) - s) < 1e-12 * s);
        // Z norm of a single mode: (1 + 1) * (1/2) / dxi
        const auto c = transform(g, sample(g, [](double x) { return std::cos(x); }));
        CHECK(std::abs(norm(c, NormSpec::z()) - 1.0 / g.dxi()) < 1e-10);
        CHECK(norm(f, NormSpec::sobolev(3.0)) > norm(f, NormSpec::sobolev(1.0)));
        CHECK_THROWS_AS(norm(f, NormSpec::bab(6.0, 1.0)), DomainError);
        CHECK_THROWS_AS(norm(f, NormSpec::z(-1.0, 2.0)), DomainError);
    }

    TEST_CASE("sup norm on the padded grid") {
        const Grid g{256, 16.0 * pi};
        const auto f = transform(g, sample(g, [](double x) { return -3.0 * std::exp(-x * x); }));
        CHECK(std::abs(sup_norm(f) - 3.0) < 1e-10);
    }

    TEST_CASE("dispersion relation") {
        CHECK(dispersion(0.0) == 0.0);
        CHECK(std::abs(dispersion(1.0) + 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(dispersion(0.0, 1) == -1.0);
        CHECK(std::abs(dispersion(1.0, 2) - 3.0 / std::pow(2.0, 2.5)) < 1e-15);
        for (double xi : {-2.0, 0.3, 1.7})
            for (int k = 0; k < 3; ++k) {
                const double h = 1e-5;
                const double fd = (dispersion(xi + h, k) - dispersion(xi - h, k)) / (2.0 * h);
                CHECK(std::abs(fd - dispersion(xi, k + 1)) < 1e-8);
            }
        CHECK(DispersionSpec::d2p(0.5) == dispersion(0.5, 2));
        CHECK_THROWS_AS(dispersion(1.0, 4), UnsupportedOrderError);
    }

    TEST_CASE("profile transform") {
        const Grid g{256, 16.0 * pi};
        const auto f = transform(g, sample(g, bump));
        const auto h0 = to_profile(f, 0.0);
        for (int i = 0; i < g.n; ++i) CHECK(h0.coeffs[i] == f.coeffs[i]);
        const auto h = to_profile(f, 37.5);
        const auto back = from_profile(h, 37.5);
        for (int i = 0; i < g.n; ++i) {
            CHECK(std::abs(std::abs(h.coeffs[i]) - std::abs(f.coeffs[i])) < 1e-13);
            CHECK(std::abs(back.coeffs[i] - f.coeffs[i]) < 1e-13);
        }
        // Linear evolution leaves the profile fixed.
        for (double t : {1.0, 25.0, 400.0}) {
            const auto hp = to_profile(propagate_linear(f, t, Frame::moving), t);
            double d = 0.0;
            for (int i = 0; i < g.n; ++i) d = std::max(d, std::abs(hp.coeffs[i] - f.coeffs[i]));
            CHECK(d < 1e-10);
        }
        FrontState lab{g, sample(g, bump), 1.0, Frame::lab};
        CHECK_THROWS_AS(to_profile(lab), DomainError);
    }

    TEST_CASE("spectral derivative") {
        const Grid g{1024, 16.0 * pi};
        const auto d = derivative(g, sample(g, [](double x) { return std::exp(-x * x); }));
        CHECK(max_diff(d, sample(g, [](double x) { return -2.0 * x * std::exp(-x * x); })) < 1e-12);
    }
}
