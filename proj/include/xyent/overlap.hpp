#pragma once

// Exact finite-N overlap between a sector ground state and the rotated
// product ansatz, evaluated in log domain so chains of 10^6 spins neither
// underflow nor overflow, plus the xi-maximization that turns overlaps into
// entanglement numbers.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "xyent/model.hpp"
#include "xyent/optimize.hpp"

namespace xyent {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Product state generated by a uniform rotation of the fully polarized state
// about y: every site carries cos(xi/2)|up> + sin(xi/2)|down>.
// |overlap| is even in xi, so [0, pi] covers the whole family.
struct ProductAnsatz {
    double xi;

    explicit ProductAnsatz(double xi_) : xi(xi_) {
        if (!std::isfinite(xi) || xi < 0.0 || xi > std::numbers::pi)
            throw std::invalid_argument("ProductAnsatz: xi must lie in [0, pi]");
    }
};

// Mixing angle of cos(alpha) Psi_0 + sin(alpha) Psi_1.
struct SuperpositionSpec {
    double alpha;

    explicit SuperpositionSpec(double alpha_) : alpha(alpha_) {
        if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 0.5 * std::numbers::pi)
            throw std::invalid_argument("SuperpositionSpec: alpha must lie in [0, pi/2]");
    }
};

// Signed log-magnitude representation of an overlap.
// sign == 0 iff the overlap is exactly zero (log_abs == -inf).
struct LogOverlap {
    double log_abs = kNegInf;
    int sign = 0;

    double value() const { return sign * std::exp(log_abs); }
};

namespace detail {

inline LogOverlap signed_log(double x) {
    if (x == 0.0) return {kNegInf, 0};
    return {std::log(std::abs(x)), x > 0.0 ? 1 : -1};
}

// Prefactor carried by the unpaired momenta (k = 0 and/or k = pi when they
// belong to the sector grid); depends on the parity of N.
inline LogOverlap ansatz_prefactor(const ChainSpec& spec, double xi) {
    const double s = std::sin(0.5 * xi);
    const double c = std::cos(0.5 * xi);
    double f;
    if (spec.even_n())
        f = spec.sector == 0 ? 1.0 : std::sqrt(static_cast<double>(spec.n)) * s * c;
    else
        f = spec.sector == 0 ? c : std::sqrt(static_cast<double>(spec.n)) * s;
    return signed_log(f);
}

}  // namespace detail

// Overlap of the sector's lowest state with the ansatz at angle xi.
// Accumulates the mode product in a running double, renormalizing through
// frexp whenever the magnitude leaves [1e-140, 1e140]; one log at the end
// instead of one per factor.
inline LogOverlap overlap(const SpectrumData& spectrum, const ProductAnsatz& ansatz) {
    const double c = std::cos(0.5 * ansatz.xi);
    const double s = std::sin(0.5 * ansatz.xi);
    const double c2 = c * c;
    const double s2 = s * s;

    LogOverlap pre = detail::ansatz_prefactor(spectrum.spec, ansatz.xi);
    if (pre.sign == 0) return pre;

    double prod = 1.0;
    long long exp_sum = 0;
    int sign = pre.sign;
    for (const SpectrumMode& m : spectrum.modes) {
        double factor = m.coeff_cos * c2 + m.coeff_cot * s2;
        if (factor == 0.0) return {kNegInf, 0};
        if (factor < 0.0) {
            sign = -sign;
            factor = -factor;
        }
        prod *= factor;
        if (prod < 1e-140 || prod > 1e140) {
            int e;
            prod = std::frexp(prod, &e);
            exp_sum += e;
        }
    }
    if (prod == 0.0) return {kNegInf, 0};

    const double log_abs = pre.log_abs + std::log(prod) +
                           static_cast<double>(exp_sum) * std::numbers::ln2;
    return {log_abs, sign};
}

inline LogOverlap overlap(const ModelPoint& point, const ChainSpec& spec,
                          const ProductAnsatz& ansatz) {
    return overlap(SpectrumData(point, spec), ansatz);
}

// cos(alpha) <Psi_0|Phi> + sin(alpha) <Psi_1|Phi>, combined in log-safe form
// by factoring out the larger magnitude.
inline LogOverlap overlap_superposition(const SpectrumData& even_sector,
                                        const SpectrumData& odd_sector,
                                        const SuperpositionSpec& mix,
                                        const ProductAnsatz& ansatz) {
    if (even_sector.spec.sector != 0 || odd_sector.spec.sector != 1 ||
        even_sector.spec.n != odd_sector.spec.n)
        throw std::invalid_argument("overlap_superposition: need sectors 0 and 1 at equal n");

    const LogOverlap o0 = overlap(even_sector, ansatz);
    const LogOverlap o1 = overlap(odd_sector, ansatz);
    const LogOverlap c0 = detail::signed_log(std::cos(mix.alpha));
    const LogOverlap c1 = detail::signed_log(std::sin(mix.alpha));

    const double l0 = o0.log_abs + c0.log_abs;  // -inf propagates
    const double l1 = o1.log_abs + c1.log_abs;
    const int s0 = o0.sign * c0.sign;
    const int s1 = o1.sign * c1.sign;
    if (s0 == 0) return {l1, s1};
    if (s1 == 0) return {l0, s0};

    const double hi = std::max(l0, l1), lo = std::min(l0, l1);
    const int sign_hi = l0 >= l1 ? s0 : s1;
    const double t = (s0 == s1 ? 1.0 : -1.0) * std::exp(lo - hi);
    if (1.0 + t <= 0.0) return {kNegInf, 0};  // exact cancellation
    return {hi + std::log1p(t), sign_hi};
}

inline LogOverlap overlap_superposition(const ModelPoint& point, long long n,
                                        const SuperpositionSpec& mix,
                                        const ProductAnsatz& ansatz) {
    return overlap_superposition(SpectrumData(point, ChainSpec(n, 0)),
                                 SpectrumData(point, ChainSpec(n, 1)), mix, ansatz);
}

enum class AccuracyTag { normal, reduced_near_critical, critical_line_average };

inline const char* to_string(AccuracyTag tag) {
    switch (tag) {
        case AccuracyTag::reduced_near_critical: return "reduced-accuracy-near-critical";
        case AccuracyTag::critical_line_average: return "critical-line-average";
        default: return "normal";
    }
}

// Lambda_max and the derived entanglement numbers at one phase-diagram point.
// log_lambda is authoritative; lambda_max = exp(log_lambda) may underflow to
// zero for very long chains while e_log2/density stay exact.
struct EntanglementResult {
    double lambda_max = 0.0;
    double log_lambda = kNegInf;
    double e_log2 = std::numeric_limits<double>::infinity();
    double density = std::numeric_limits<double>::infinity();
    double xi_star = 0.0;
    bool flat_objective = false;
    AccuracyTag tag = AccuracyTag::normal;
    double quad_error = 0.0;  // thermodynamic-limit results only
};

namespace detail {

inline EntanglementResult result_from_log(double log_lambda, double xi_star,
                                          double n_sites, bool flat) {
    EntanglementResult res;
    res.log_lambda = log_lambda;
    res.lambda_max = std::exp(log_lambda);
    res.e_log2 = -2.0 * log_lambda / std::numbers::ln2;
    res.density = res.e_log2 / n_sites;
    res.xi_star = xi_star;
    res.flat_objective = flat;
    return res;
}

}  // namespace detail

// Maximize |overlap| over xi in [0, pi]: 257-point coarse scan plus
// golden-section refinement (smallest xi wins ties). With a mix present the
// objective is the superposed overlap of both sectors; spec.sector is then
// irrelevant.
inline EntanglementResult maximize_entanglement(
    const ModelPoint& point, const ChainSpec& spec,
    const std::optional<SuperpositionSpec>& mix = std::nullopt,
    const MaximizeOptions& opt = {}) {
    MaximizeResult best;
    if (mix) {
        const SpectrumData sp0(point, ChainSpec(spec.n, 0));
        const SpectrumData sp1(point, ChainSpec(spec.n, 1));
        best = maximize_on_interval(
            [&](double xi) {
                return overlap_superposition(sp0, sp1, *mix, ProductAnsatz(xi)).log_abs;
            },
            0.0, std::numbers::pi, opt);
    } else {
        const SpectrumData sp(point, spec);
        best = maximize_on_interval(
            [&](double xi) { return overlap(sp, ProductAnsatz(xi)).log_abs; },
            0.0, std::numbers::pi, opt);
    }
    return detail::result_from_log(best.value, best.x,
                                   static_cast<double>(spec.n), best.flat);
}

}  // namespace xyent
