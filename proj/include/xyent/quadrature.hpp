#pragma once

// Composite Gauss-Legendre machinery. Interior nodes only, so integrands with
// endpoint poles (cot pi*mu at mu=0) are never evaluated at the singularity.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace xyent {

struct QuadratureSpec {
    int panels = 64;
    int nodes_per_panel = 16;
    double endpoint_cut = 0.0;  // excluded width at mu = 0

    QuadratureSpec() = default;
    QuadratureSpec(int panels_, int nodes_, double cut = 0.0)
        : panels(panels_), nodes_per_panel(nodes_), endpoint_cut(cut) {
        validate();
    }

    void validate() const {
        if (panels < 1)
            throw std::invalid_argument("QuadratureSpec: panels must be >= 1");
        if (nodes_per_panel < 2)
            throw std::invalid_argument("QuadratureSpec: nodes_per_panel must be >= 2");
        if (!(endpoint_cut >= 0.0) || endpoint_cut >= 1e-3)
            throw std::invalid_argument("QuadratureSpec: endpoint_cut must lie in [0, 1e-3)");
    }
};

struct GLNode {
    double x;  // abscissa on [-1, 1]
    double w;
};

// Nodes and weights by Newton iteration on the Legendre recurrence; accurate
// to ~1e-15 and cheap enough to recompute per call (keeps this header
// stateless and trivially thread-safe).
inline std::vector<GLNode> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::vector<GLNode> nodes(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            deriv = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[static_cast<std::size_t>(i)] = {-x, w};
        nodes[static_cast<std::size_t>(n - 1 - i)] = {x, w};
    }
    return nodes;
}

// Nodes of a composite rule over consecutive [breaks[i], breaks[i+1]] panels.
struct PanelRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline PanelRule composite_rule(const std::vector<double>& breaks, int nodes_per_panel) {
    const std::vector<GLNode> base = gauss_legendre(nodes_per_panel);
    PanelRule rule;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
        for (const GLNode& node : base) {
            rule.x.push_back(mid + halfw * node.x);
            rule.w.push_back(halfw * node.w);
        }
    }
    return rule;
}

}  // namespace xyent
