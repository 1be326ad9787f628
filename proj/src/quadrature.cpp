#include "qgsw/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "qgsw/error.hpp"

namespace qgsw {

namespace {

GaussRule build_gauss(int n) {
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton on P_n from the Tricomi initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        g.weights[i] = g.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) g.nodes[n / 2] = 0.0;
    return g;
}

std::vector<double> inner_breaks(double s_max) {
    std::vector<double> b{0.0};
    double s = 0.0, w = 1.0;
    while (s < s_max) {
        s = std::min(s + w, s_max);
        b.push_back(s);
        if (s >= 4.0) w *= 1.5;
    }
    return b;
}

std::vector<double> outer_breaks(const QuadratureSpec& q) {
    std::vector<double> b{q.inner_radius};
    double z = q.inner_radius;
    while (z < q.z_max - 1e-12) {
        const double w = z < q.far_start - 1e-12 ? q.outer_panel_width : q.far_panel_width;
        double nz = z + w;
        if (z < q.far_start && nz > q.far_start) nz = q.far_start;
        z = std::min(nz, q.z_max);
        b.push_back(z);
    }
    return b;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 256) throw DomainError("Gauss-Legendre order out of range");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(build_gauss(n));
    return *slot;
}

void QuadratureSpec::validate() const {
    if (!(inner_radius > 0.0)) throw DomainError("quadrature: inner radius must be positive");
    if (!(z_max >= 10.0)) throw DomainError("quadrature: z_max must be at least 10");
    if (!(z_max > inner_radius)) throw DomainError("quadrature: z_max must exceed the inner radius");
    if (inner_panel_nodes < 2 || outer_panel_nodes < 2) throw DomainError("quadrature: too few nodes per panel");
    if (!(outer_panel_width > 0.0) || !(far_panel_width > 0.0)) throw DomainError("quadrature: panel widths must be positive");
    if (!(inner_s_max > 1.0)) throw DomainError("quadrature: inner_s_max must exceed 1");
    if (inner_node_count() < 16 || outer_node_count() < 16)
        throw DomainError("quadrature: node counts must be at least 16 per region");
}

int QuadratureSpec::inner_node_count() const {
    return int(inner_breaks(inner_s_max).size() - 1) * inner_panel_nodes;
}

int QuadratureSpec::outer_node_count() const {
    return int(outer_breaks(*this).size() - 1) * outer_panel_nodes;
}

std::vector<QuadNode> QuadratureSpec::half_line_nodes() const {
    validate();
    std::vector<QuadNode> out;
    const auto ib = inner_breaks(inner_s_max);
    const GaussRule& gi = gauss_legendre(inner_panel_nodes);
    for (size_t p = 0; p + 1 < ib.size(); ++p) {
        const double a = ib[p], b = ib[p + 1];
        for (int i = 0; i < inner_panel_nodes; ++i) {
            const double s = 0.5 * (a + b) + 0.5 * (b - a) * gi.nodes[i];
            const double z = inner_radius * std::exp(-s);
            out.push_back({z, 0.5 * (b - a) * gi.weights[i] * z});
        }
    }
    const auto ob = outer_breaks(*this);
    const GaussRule& go = gauss_legendre(outer_panel_nodes);
    for (size_t p = 0; p + 1 < ob.size(); ++p) {
        const double a = ob[p], b = ob[p + 1];
        for (int i = 0; i < outer_panel_nodes; ++i)
            out.push_back({0.5 * (a + b) + 0.5 * (b - a) * go.nodes[i], 0.5 * (b - a) * go.weights[i]});
    }
    return out;
}

QuadratureSpec QuadratureSpec::refined() const {
    QuadratureSpec r = *this;
    r.inner_panel_nodes *= 2;
    r.outer_panel_nodes *= 2;
    r.inner_s_max += 4.0;
    r.verify = false;
    return r;
}

QuadratureSpec QuadratureSpec::refined_inner() const {
    QuadratureSpec r = *this;
    r.inner_panel_nodes *= 2;
    r.verify = false;
    return r;
}

}  // namespace qgsw
