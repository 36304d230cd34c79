#pragma once

// One-dimensional maximization: uniform coarse scan to locate the global
// bracket, then golden-section refinement. The objective near phase
// boundaries can be bimodal in xi, so the coarse scan is not optional.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace xyent {

struct MaximizeOptions {
    int coarse_points = 257;   // uniform samples of [a, b], endpoints included
    double x_tol = 1e-10;
    double flat_eps = 1e-14;   // objective flatter than this across [a,b] => flat
};

struct MaximizeResult {
    double x = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    bool flat = false;
};

namespace detail {

// Golden-section maximization on [lo, hi]; assumes a single interior maximum
// within the bracket handed over by the coarse scan.
template <class F>
MaximizeResult golden_max(F&& f, double lo, double hi, double x_tol) {
    constexpr double inv_phi = 0.6180339887498948482;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > x_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (lo + hi);
    return {xm, f(xm), false};
}

}  // namespace detail

template <class F>
MaximizeResult maximize_on_interval(F&& f, double a, double b,
                                    const MaximizeOptions& opt = {}) {
    const int n = opt.coarse_points;
    double best_val = -std::numeric_limits<double>::infinity();
    double worst_val = std::numeric_limits<double>::infinity();
    int best_i = 0;
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / (n - 1);
        vals[static_cast<std::size_t>(i)] = f(x);
        const double v = vals[static_cast<std::size_t>(i)];
        if (v < worst_val) worst_val = v;
        // ties within flat_eps keep the earlier (smaller-x) candidate
        if (v > best_val + opt.flat_eps) {
            best_val = v;
            best_i = i;
        }
    }

    if (!(best_val > -std::numeric_limits<double>::infinity()) ||
        best_val - worst_val < opt.flat_eps) {
        return {a, vals[0], true};
    }

    const double step = (b - a) / (n - 1);
    const double lo = std::max(a, a + (best_i - 1) * step);
    const double hi = std::min(b, a + (best_i + 1) * step);
    MaximizeResult res = detail::golden_max(f, lo, hi, opt.x_tol);
    // never report a refined point worse than the scan's best
    if (res.value < best_val) {
        res.x = a + best_i * step;
        res.value = best_val;
    }
    return res;
}

// Simple least-squares line fit, shared by the criticality fits.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;     // max |y - fit|
    bool nonlinear = false;        // residual exceeds 5% of the y-range
};

inline LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n)
        throw std::invalid_argument("linear_fit: need >= 2 points with matching sizes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i]; sy += ys[i];
        sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = (dn * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / dn;
    double ymin = ys[0], ymax = ys[0];
    for (std::size_t i = 0; i < n; ++i) {
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    fit.nonlinear = fit.max_residual > 0.05 * (ymax - ymin);
    return fit;
}

}  // namespace xyent
