#pragma once

// Thermodynamic-limit entanglement density: the mode sum becomes an integral
// over mu in (0, 1/2) of the log-bracket, maximized over the ansatz angle.
// The integrand has an integrable log singularity at mu -> 0 (for h <= 1),
// handled by a geometric panel cascade; h = cos(2 pi mu) is a removable
// branch flip for r > 0 and a genuine jump for r = 0, handled by a panel
// break at the flip point.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "xyent/model.hpp"
#include "xyent/overlap.hpp"
#include "xyent/quadrature.hpp"

namespace xyent {

namespace detail {

// h - cos(2 pi mu), written to avoid the 1 - cos cancellation near mu = 0.
inline double field_minus_cos(double h, double mu) {
    const double s = std::sin(std::numbers::pi * mu);
    return (h - 1.0) + 2.0 * s * s;
}

}  // namespace detail

// Continuum mixing angle at wavevector 2 pi mu.
inline double thermo_angle(const ModelPoint& point, double mu) {
    const double num = point.r * std::sin(2.0 * std::numbers::pi * mu);
    const double den = detail::field_minus_cos(point.h, mu);
    if (num == 0.0 && den == 0.0) return 0.0;
    return 0.5 * std::atan2(num, den);
}

namespace detail {

// The two coefficients of the integrand bracket at one mu:
// bracket(xi) = a * cos^2(xi/2) + b * sin^2(xi/2) with
// a = cos theta, b = sin theta * cot(pi mu).
// Below mu = 1e-8 on the theta -> 0 branch the product is taken from its
// series, sin theta * cot(pi mu) = r cos^2(pi mu) / (h - cos 2 pi mu) + O(mu^2),
// which tends to r/(h-1); the direct product would multiply a vanishing angle
// by a diverging cotangent.
inline void integrand_coeffs(const ModelPoint& point, double mu, double& a, double& b) {
    const double den = field_minus_cos(point.h, mu);
    if (mu < 1e-8 && den > 0.0) {
        const double cpm = std::cos(std::numbers::pi * mu);
        const double theta = thermo_angle(point, mu);
        a = std::cos(theta);
        b = point.r * cpm * cpm / den;
        return;
    }
    const double theta = thermo_angle(point, mu);
    a = std::cos(theta);
    b = std::sin(theta) / std::tan(std::numbers::pi * mu);
}

}  // namespace detail

// Log-bracket of the density integral. Returns -inf when the bracket is not
// positive (infeasible xi, e.g. xi = pi with a field-aligned mode), which the
// maximizer treats as "never pick this xi".
inline double thermo_integrand(const ModelPoint& point, double mu, double xi) {
    if (!(mu > 0.0 && mu < 0.5))
        throw std::invalid_argument("thermo_integrand: mu must lie strictly in (0, 1/2)");
    double a, b;
    detail::integrand_coeffs(point, mu, a, b);
    const double c = std::cos(0.5 * xi), s = std::sin(0.5 * xi);
    const double bracket = a * c * c + b * s * s;
    if (!(bracket > 0.0)) return kNegInf;
    return std::log(bracket);
}

// Cached integration nodes for one (point, quadrature) pair; reused across
// all xi evaluations of the maximization.
struct ThermoNodes {
    std::vector<double> mu;
    std::vector<double> weight;
    std::vector<double> a;  // cos theta
    std::vector<double> b;  // sin theta * cot(pi mu)
};

inline std::vector<double> panel_breakpoints(const ModelPoint& point,
                                             const QuadratureSpec& quad) {
    quad.validate();
    std::vector<double> brk;
    const double width = 0.5 / quad.panels;
    for (int j = 0; j <= quad.panels; ++j)
        brk.push_back(width * static_cast<double>(j));

    // doubled panel density on [0, 1/64]
    std::vector<double> extra;
    for (std::size_t j = 0; j + 1 < brk.size(); ++j)
        if (brk[j + 1] <= 1.0 / 64.0 + 1e-12)
            extra.push_back(0.5 * (brk[j] + brk[j + 1]));
    brk.insert(brk.end(), extra.begin(), extra.end());

    // branch-flip field: exact jump of theta for r = 0, steepest variation
    // otherwise
    if (point.h < 1.0)
        brk.push_back(std::acos(point.h) / (2.0 * std::numbers::pi));

    std::sort(brk.begin(), brk.end());

    // geometric cascade into the mu -> 0 log singularity
    const double floor_width = std::max(quad.endpoint_cut, 1e-15);
    std::vector<double> cascade;
    for (double g = 0.5 * brk[1]; g > floor_width; g *= 0.5) cascade.push_back(g);
    brk.insert(brk.end(), cascade.begin(), cascade.end());
    if (quad.endpoint_cut > 0.0) {
        brk.push_back(quad.endpoint_cut);
        brk.erase(std::remove_if(brk.begin(), brk.end(),
                                 [&](double x) { return x < quad.endpoint_cut; }),
                  brk.end());
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    return brk;
}

inline ThermoNodes build_thermo_nodes(const ModelPoint& point, const QuadratureSpec& quad) {
    const PanelRule rule = composite_rule(panel_breakpoints(point, quad),
                                          quad.nodes_per_panel);
    ThermoNodes nodes;
    const std::size_t n = rule.x.size();
    nodes.mu = rule.x;
    nodes.weight = rule.w;
    nodes.a.resize(n);
    nodes.b.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        detail::integrand_coeffs(point, rule.x[i], nodes.a[i], nodes.b[i]);
    return nodes;
}

// integral of the log-bracket at fixed xi; deterministic node order.
inline double thermo_objective(const ThermoNodes& nodes, double xi) {
    const double c = std::cos(0.5 * xi), s = std::sin(0.5 * xi);
    const double c2 = c * c, s2 = s * s;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.mu.size(); ++i) {
        const double bracket = nodes.a[i] * c2 + nodes.b[i] * s2;
        if (!(bracket > 0.0)) return kNegInf;
        sum += nodes.weight[i] * std::log(bracket);
    }
    return sum;
}

// Entanglement density at N = infinity. The returned result carries the
// density (lambda_max / e_log2 are not meaningful at infinite N and are NaN)
// plus a quadrature error estimate from a half-resolution re-evaluation at
// the maximizing xi.
inline EntanglementResult thermo_density(const ModelPoint& point,
                                         const QuadratureSpec& quad = {},
                                         const MaximizeOptions& opt = {}) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    if (point.h == 1.0) {
        // the density is continuous across the critical line but the
        // integrand degenerates at mu -> 0; report the two-sided average
        const EntanglementResult lo =
            thermo_density(ModelPoint(point.r, 1.0 - 1e-8), quad, opt);
        const EntanglementResult hi =
            thermo_density(ModelPoint(point.r, 1.0 + 1e-8), quad, opt);
        EntanglementResult res;
        res.lambda_max = nan;
        res.log_lambda = nan;
        res.e_log2 = nan;
        res.density = 0.5 * (lo.density + hi.density);
        res.xi_star = 0.5 * (lo.xi_star + hi.xi_star);
        res.flat_objective = lo.flat_objective && hi.flat_objective;
        res.tag = AccuracyTag::critical_line_average;
        res.quad_error = std::max(lo.quad_error, hi.quad_error) +
                         0.5 * std::abs(lo.density - hi.density);
        return res;
    }

    const ThermoNodes nodes = build_thermo_nodes(point, quad);
    const MaximizeResult best = maximize_on_interval(
        [&](double xi) { return thermo_objective(nodes, xi); }, 0.0,
        std::numbers::pi, opt);

    const double scale = -2.0 / std::numbers::ln2;
    EntanglementResult res;
    res.lambda_max = nan;
    res.log_lambda = nan;
    res.e_log2 = nan;
    res.density = scale * best.value;
    res.xi_star = best.x;
    res.flat_objective = best.flat;
    res.tag = std::abs(point.h - 1.0) < 1e-6 ? AccuracyTag::reduced_near_critical
                                             : AccuracyTag::normal;

    QuadratureSpec half = quad;
    half.panels = std::max(1, quad.panels / 2);
    const ThermoNodes coarse = build_thermo_nodes(point, half);
    res.quad_error = std::abs(scale * (best.value - thermo_objective(coarse, best.x)));
    return res;
}

}  // namespace xyent
