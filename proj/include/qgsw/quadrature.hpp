#pragma once

#include <vector>

namespace qgsw {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached, thread-safe; n in [1, 256].
const GaussRule& gauss_legendre(int n);

// Integrate f over [a, b] with n-point Gauss-Legendre on `panels` equal panels.
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, int n = 16) {
    const GaussRule& g = gauss_legendre(n);
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        for (int i = 0; i < n; ++i) s += g.weights[i] * f(c + 0.5 * h * g.nodes[i]);
    }
    return 0.5 * h * s;
}

struct QuadNode {
    double zeta;    // > 0; callers add the mirrored node -zeta themselves
    double weight;
};

// Discretization of integrals over zeta in R of kernels with a logarithmic
// singularity at zeta = 0 and exponential decay at infinity.
//   |zeta| < inner_radius : zeta = inner_radius * e^{-s}, s in [0, inner_s_max],
//                           Gauss-Legendre panels in s widening geometrically
//   inner_radius < |zeta| < z_max : Gauss-Legendre panels of width
//                           outer_panel_width up to far_start, then far_panel_width
struct QuadratureSpec {
    double inner_radius = 1.0;
    int inner_panel_nodes = 8;
    double inner_s_max = 36.0;
    double z_max = 40.0;
    int outer_panel_nodes = 8;
    double outer_panel_width = 1.0;
    double far_start = 12.0;
    double far_panel_width = 2.0;
    // Evaluate once more with refined nodes and throw AccuracyError when the
    // two results differ by more than tolerance (max-norm, absolute).
    bool verify = false;
    double tolerance = 1e-8;

    void validate() const;

    // Nodes on (0, z_max]; the rule integrates f(zeta) + f(-zeta).
    std::vector<QuadNode> half_line_nodes() const;
    int inner_node_count() const;
    int outer_node_count() const;

    // Twice the nodes per panel, inner grading extended by 4 units of s.
    QuadratureSpec refined() const;
    // Twice the inner nodes only.
    QuadratureSpec refined_inner() const;
};

}  // namespace qgsw
