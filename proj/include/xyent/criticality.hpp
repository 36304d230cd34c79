#pragma once

// Field derivatives of the entanglement density, divergence-amplitude fits on
// both sides of the critical line, and the finite-size-scaling route to the
// correlation-length exponent.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xyent/model.hpp"
#include "xyent/optimize.hpp"
#include "xyent/overlap.hpp"
#include "xyent/thermo.hpp"

namespace xyent {

// What to evaluate the density of: a finite chain (sector or superposition)
// or the thermodynamic limit.
struct DensityTarget {
    std::optional<long long> n;  // nullopt = thermodynamic limit
    int sector = 0;
    std::optional<double> alpha;
    QuadratureSpec quad{};
    MaximizeOptions xi_opt{};

    bool thermo() const { return !n.has_value(); }

    static DensityTarget thermodynamic(const QuadratureSpec& quad = {}) {
        DensityTarget t;
        t.quad = quad;
        return t;
    }

    static DensityTarget finite(long long n, int sector = 0) {
        DensityTarget t;
        t.n = n;
        t.sector = sector;
        return t;
    }

    double density(double r, double h) const {
        const ModelPoint point(r, h);
        if (!n) return thermo_density(point, quad, xi_opt).density;
        if (alpha)
            return maximize_entanglement(point, ChainSpec(*n, sector),
                                         SuperpositionSpec(*alpha), xi_opt)
                .density;
        return maximize_entanglement(point, ChainSpec(*n, sector), std::nullopt, xi_opt)
            .density;
    }
};

enum class StencilScheme { central, one_sided_left, one_sided_right };

inline const char* to_string(StencilScheme s) {
    switch (s) {
        case StencilScheme::one_sided_left: return "one-sided-left";
        case StencilScheme::one_sided_right: return "one-sided-right";
        default: return "central";
    }
}

struct DerivativeEstimate {
    double value = 0.0;
    double step = 0.0;
    StencilScheme scheme = StencilScheme::central;
};

// d(density)/dh. Central difference by default; one-sided (second order)
// whenever a thermodynamic-limit stencil would straddle h = 1, where the
// derivative is singular, or when h - 2*step would leave h >= 0.
inline DerivativeEstimate field_derivative(const DensityTarget& target,
                                           const ModelPoint& point, double step) {
    if (!(step >= 1e-8) || !(step <= 1e-2))
        throw std::invalid_argument(
            "field_derivative: step must lie in [1e-8, 1e-2]; below 1e-8 the "
            "quadrature/optimizer noise floor dominates the quotient");

    const double h = point.h;
    StencilScheme scheme = StencilScheme::central;
    if (target.thermo() && h - step <= 1.0 && h + step >= 1.0)
        scheme = h >= 1.0 ? StencilScheme::one_sided_right : StencilScheme::one_sided_left;
    if (h - step < 0.0) scheme = StencilScheme::one_sided_right;

    const double r = point.r;
    double value = 0.0;
    switch (scheme) {
        case StencilScheme::central:
            value = (target.density(r, h + step) - target.density(r, h - step)) /
                    (2.0 * step);
            break;
        case StencilScheme::one_sided_right:
            value = (-3.0 * target.density(r, h) + 4.0 * target.density(r, h + step) -
                     target.density(r, h + 2.0 * step)) /
                    (2.0 * step);
            break;
        case StencilScheme::one_sided_left:
            value = (3.0 * target.density(r, h) - 4.0 * target.density(r, h - step) +
                     target.density(r, h - 2.0 * step)) /
                    (2.0 * step);
            break;
    }
    return {value, step, scheme};
}

// Log-spaced |h-1| window, side = +1 for h > 1 and -1 for h < 1.
inline std::vector<double> critical_window(double dist_lo, double dist_hi, int points,
                                           int side) {
    if (!(dist_lo > 0.0) || !(dist_hi > dist_lo) || points < 2 ||
        (side != 1 && side != -1))
        throw std::invalid_argument("critical_window: bad window parameters");
    std::vector<double> hs;
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        const double dist = std::exp(std::log(dist_lo) +
                                     t * (std::log(dist_hi) - std::log(dist_lo)));
        hs.push_back(1.0 + side * dist);
    }
    std::sort(hs.begin(), hs.end());
    return hs;
}

struct AmplitudeFit {
    double amplitude = 0.0;
    LinearFit fit;
    std::vector<double> h_values;
    std::vector<double> derivatives;
};

namespace detail {

inline double window_step(double h) {
    return std::clamp(std::abs(h - 1.0) / 4.0, 1e-8, 1e-2);
}

}  // namespace detail

// Slope of dE/dh against -ln|h-1|; the divergence amplitude, expected to be
// (2 pi r ln 2)^{-1} in the anisotropic (Ising) class. The nonlinearity flag
// fires when the window has left the asymptotic regime.
inline AmplitudeFit ising_amplitude_fit(double r, const std::vector<double>& h_window,
                                        const QuadratureSpec& quad = {}) {
    if (!(r > 0.0))
        throw std::invalid_argument(
            "ising_amplitude_fit: r must be > 0 (the r = 0 chain follows the XX "
            "divergence; use xx_amplitude_fit)");
    if (h_window.size() < 2)
        throw std::invalid_argument("ising_amplitude_fit: need at least 2 window points");
    const DensityTarget target = DensityTarget::thermodynamic(quad);
    AmplitudeFit out;
    for (double h : h_window) {
        if (std::abs(h - 1.0) < 1e-6)
            throw std::invalid_argument(
                "ising_amplitude_fit: window must exclude |h-1| < 1e-6");
        const DerivativeEstimate d =
            field_derivative(target, ModelPoint(r, h), detail::window_step(h));
        out.h_values.push_back(h);
        out.derivatives.push_back(d.value);
    }
    std::vector<double> xs;
    for (double h : out.h_values) xs.push_back(-std::log(std::abs(h - 1.0)));
    out.fit = linear_fit(xs, out.derivatives);
    out.amplitude = out.fit.slope;
    return out;
}

struct XXAmplitudeFit {
    double amplitude = 0.0;   // coefficient of (1-h)^{-1/2}, reported positive
    double power = 0.0;       // fitted exponent of |dE/dh| ~ (1-h)^{power}
    double nu_estimate = 0.0; // -power; 1/2 for the XX class
    LinearFit fit;
    std::vector<double> h_values;
    std::vector<double> derivatives;
};

// Regression of dE/dh at r = 0 against (1-h)^{-1/2} below the critical point.
inline XXAmplitudeFit xx_amplitude_fit(const std::vector<double>& h_window,
                                       const QuadratureSpec& quad = {}) {
    if (h_window.size() < 2)
        throw std::invalid_argument("xx_amplitude_fit: need at least 2 window points");
    const DensityTarget target = DensityTarget::thermodynamic(quad);
    XXAmplitudeFit out;
    for (double h : h_window) {
        if (!(h > 0.9) || !(h < 1.0 - 1e-6))
            throw std::invalid_argument(
                "xx_amplitude_fit: window must lie within (0.9, 1 - 1e-6)");
        const DerivativeEstimate d =
            field_derivative(target, ModelPoint(0.0, h), detail::window_step(h));
        out.h_values.push_back(h);
        out.derivatives.push_back(d.value);
    }
    std::vector<double> xs, logx, logy;
    for (std::size_t i = 0; i < out.h_values.size(); ++i) {
        xs.push_back(1.0 / std::sqrt(1.0 - out.h_values[i]));
        logx.push_back(std::log(1.0 - out.h_values[i]));
        logy.push_back(std::log(std::abs(out.derivatives[i])));
    }
    out.fit = linear_fit(xs, out.derivatives);
    out.amplitude = -out.fit.slope;  // the derivative is negative on this side
    out.power = linear_fit(logx, logy).slope;
    out.nu_estimate = -out.power;
    return out;
}

struct ScalingOptions {
    double bracket_lo = 0.9;
    double bracket_hi = 1.3;
    double fd_step = 1e-4;
    double h_tol = 1e-5;
    int coarse_points = 33;
    // window for the thermodynamic amplitude entering the ratio
    double window_lo = 1e-5;
    double window_hi = 1e-3;
    int window_points = 9;
    QuadratureSpec quad{};
};

struct ScalingFit {
    double amplitude = 0.0;   // slope of max-slope vs ln N
    double intercept = 0.0;
    double nu_estimate = 0.0; // thermodynamic amplitude / finite-size amplitude
    double residual = 0.0;
    double thermo_amplitude = 0.0;
    std::vector<std::pair<long long, double>> h_max_list;  // (N, h_max,N)
    std::vector<double> slope_max;
    bool monotone_ok = true;
};

// For each N locate the field h_max,N maximizing the finite-N slope, regress
// the maximal slope against ln N, and identify nu with the ratio of the
// thermodynamic and finite-size divergence amplitudes.
inline ScalingFit finite_size_scaling(double r, const std::vector<long long>& n_list,
                                      const ScalingOptions& opt = {}) {
    if (!(r > 0.0))
        throw std::invalid_argument("finite_size_scaling: r must be > 0");
    if (n_list.size() < 4)
        throw std::invalid_argument("finite_size_scaling: need at least 4 chain lengths");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
        if (n_list[i + 1] <= n_list[i])
            throw std::invalid_argument("finite_size_scaling: n_list must be increasing");
    if (n_list.back() < 32 * n_list.front())
        throw std::invalid_argument(
            "finite_size_scaling: n_list must span at least a factor of 32");

    ScalingFit out;
    std::vector<double> lnN;
    for (long long n : n_list) {
        const DensityTarget target = DensityTarget::finite(n, 0);
        MaximizeOptions mopt;
        mopt.coarse_points = opt.coarse_points;
        mopt.x_tol = opt.h_tol;
        const MaximizeResult peak = maximize_on_interval(
            [&](double h) {
                return field_derivative(target, ModelPoint(r, h), opt.fd_step).value;
            },
            opt.bracket_lo, opt.bracket_hi, mopt);
        if (!(peak.x > 0.5 && peak.x < 1.5))
            throw std::runtime_error("finite_size_scaling: h_max escaped (0.5, 1.5)");
        out.h_max_list.emplace_back(n, peak.x);
        out.slope_max.push_back(peak.value);
        lnN.push_back(std::log(static_cast<double>(n)));
    }

    // the slope maximum must drift toward the critical line monotonically
    for (std::size_t i = 0; i + 1 < out.h_max_list.size(); ++i)
        if (out.h_max_list[i + 1].second > out.h_max_list[i].second + 5e-3)
            out.monotone_ok = false;

    const LinearFit fit = linear_fit(lnN, out.slope_max);
    out.amplitude = fit.slope;
    out.intercept = fit.intercept;
    out.residual = fit.max_residual;

    const AmplitudeFit thermo = ising_amplitude_fit(
        r, critical_window(opt.window_lo, opt.window_hi, opt.window_points, +1),
        opt.quad);
    out.thermo_amplitude = thermo.amplitude;
    out.nu_estimate = thermo.amplitude / out.amplitude;
    return out;
}

}  // namespace xyent
