#pragma once

// Brute-force ground truth at small N: dense XY Hamiltonian, exact lowest
// states per parity sector, unrestricted product-state maximization, and the
// correlator (subset) expansion of Lambda_max^2. Everything here is
// independent of the analytic overlap formula it validates.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "xyent/model.hpp"
#include "xyent/optimize.hpp"

namespace xyent::oracle {

using Complex = std::complex<double>;

// sigma^z product basis: bit value 0 = up, 1 = down; site 1 occupies the most
// significant bit, so index 0 is the all-up state.
struct DenseState {
    int n = 0;
    Eigen::VectorXcd amp;

    DenseState() = default;
    DenseState(int n_, Eigen::VectorXcd amp_) : n(n_), amp(std::move(amp_)) {
        if (amp.size() != (1LL << n))
            throw std::invalid_argument("DenseState: amplitude count must be 2^n");
        const double nrm = amp.norm();
        if (std::abs(nrm - 1.0) > 1e-12)
            throw std::invalid_argument("DenseState: state must be normalized");
    }
};

inline int site_bit(std::uint32_t index, int site, int n) {
    return static_cast<int>((index >> (n - site)) & 1u);
}

inline Eigen::MatrixXd build_hamiltonian(const ModelPoint& point, int n) {
    if (n < 2 || n > 12)
        throw std::invalid_argument("build_hamiltonian: n must lie in [2, 12]");
    const std::uint32_t dim = 1u << n;
    Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint32_t b = 0; b < dim; ++b) {
        // transverse field: sum_j sigma^z_j = n - 2 (#down)
        ham(b, b) -= point.h * (n - 2 * __builtin_popcount(b));
        for (int j = 1; j <= n; ++j) {
            const int j2 = j % n + 1;  // periodic neighbor
            const std::uint32_t mask =
                (1u << (n - j)) | (1u << (n - j2));
            const std::uint32_t b2 = b ^ mask;
            // (1+r)/2 xx + (1-r)/2 yy acting on the bond flips both spins;
            // matrix element r for aligned spins, 1 for anti-aligned.
            const bool aligned = site_bit(b, j, n) == site_bit(b, j2, n);
            ham(b2, b) -= aligned ? point.r : 1.0;
        }
    }
    return ham;
}

// <Psi| prod_j sigma^z_j |Psi>
inline double parity_expectation(const DenseState& state) {
    double p = 0.0;
    const std::uint32_t dim = 1u << state.n;
    for (std::uint32_t b = 0; b < dim; ++b) {
        const double w = std::norm(state.amp(b));
        p += (__builtin_popcount(b) % 2 == 0) ? w : -w;
    }
    return p;
}

struct GroundPair {
    DenseState psi0;  // lowest state, even parity (+1 eigenvalue of prod sigma^z)
    DenseState psi1;  // lowest state, odd parity
    double e0 = 0.0;
    double e1 = 0.0;
};

// Diagonalizes each parity block separately; the returned states have exact
// parity by construction. Degenerate ground subspaces are resolved by the
// eigensolver deterministically and the global sign fixed so that the first
// nonzero amplitude (in basis order) is real positive.
inline GroundPair lowest_states(const ModelPoint& point, int n) {
    if (n < 2 || n > 12)
        throw std::invalid_argument("lowest_states: n must lie in [2, 12]");
    const std::uint32_t dim = 1u << n;
    GroundPair out;
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<std::uint32_t> basis;
        basis.reserve(dim / 2);
        for (std::uint32_t b = 0; b < dim; ++b)
            if (__builtin_popcount(b) % 2 == parity) basis.push_back(b);
        std::vector<std::int64_t> pos(dim, -1);
        for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<std::int64_t>(i);

        const std::size_t bdim = basis.size();
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(bdim, bdim);
        for (std::size_t i = 0; i < bdim; ++i) {
            const std::uint32_t b = basis[i];
            block(i, i) -= point.h * (n - 2 * __builtin_popcount(b));
            for (int j = 1; j <= n; ++j) {
                const int j2 = j % n + 1;
                const std::uint32_t mask = (1u << (n - j)) | (1u << (n - j2));
                const std::uint32_t b2 = b ^ mask;
                block(pos[b2], i) -= site_bit(b, j, n) == site_bit(b, j2, n) ? point.r : 1.0;
            }
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("lowest_states: eigensolver failed");
        Eigen::VectorXd ground = solver.eigenvectors().col(0);
        for (std::size_t i = 0; i < bdim; ++i) {
            if (std::abs(ground(i)) > 1e-12) {
                if (ground(i) < 0.0) ground = -ground;
                break;
            }
        }
        Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
        for (std::size_t i = 0; i < bdim; ++i) full(basis[i]) = ground(i);
        if (parity == 0) {
            out.psi0 = DenseState(n, full);
            out.e0 = solver.eigenvalues()(0);
        } else {
            out.psi1 = DenseState(n, full);
            out.e1 = solver.eigenvalues()(0);
        }
    }
    return out;
}

// <Psi|Phi(xi)> against the uniformly rotated product state, computed from
// the dense amplitudes (no fermionic formula involved).
inline Complex ansatz_overlap(const DenseState& state, double xi) {
    const double c = std::cos(0.5 * xi);
    const double s = std::sin(0.5 * xi);
    std::vector<double> by_downs(state.n + 1);
    for (int d = 0; d <= state.n; ++d)
        by_downs[d] = std::pow(c, state.n - d) * std::pow(s, d);
    Complex sum = 0.0;
    const std::uint32_t dim = 1u << state.n;
    for (std::uint32_t b = 0; b < dim; ++b)
        sum += std::conj(state.amp(b)) * by_downs[__builtin_popcount(b)];
    return sum;
}

struct SymmetricMax {
    double lambda = 0.0;
    double xi_star = 0.0;
};

// max over xi in [0, pi] of |<Psi|Phi(xi)>|, same scan-plus-golden strategy
// as the analytic route but on dense amplitudes.
inline SymmetricMax maximize_overlap_symmetric(const DenseState& state,
                                               const MaximizeOptions& opt = {}) {
    const MaximizeResult res = maximize_on_interval(
        [&](double xi) { return std::abs(ansatz_overlap(state, xi)); }, 0.0,
        std::numbers::pi, opt);
    return {res.value, res.x};
}

// Per-site angles of a general product state in the polar parametrization
// sin(xi/2)|up> + e^{i phi} cos(xi/2)|down>.
struct GeneralProductState {
    std::vector<double> xi;
    std::vector<double> phi;
};

struct FullMaxResult {
    double lambda = 0.0;
    GeneralProductState best;
    double multistart_spread = 0.0;  // max - min over converged starts
};

namespace detail {

using SiteVec = std::array<Complex, 2>;  // (up, down) coefficients

// One alternating-optimization sweep. For each site the optimal local state
// is the normalized conditional vector, so every step is exact and the
// overlap magnitude is nondecreasing. Left contractions are updated in place
// as the sweep advances; right sites keep their pre-update values until
// visited (Gauss-Seidel).
inline double sweep_once(const DenseState& state, std::vector<SiteVec>& sites) {
    const int n = state.n;
    std::vector<Complex> left(state.amp.data(), state.amp.data() + state.amp.size());
    double lambda = 0.0;
    std::vector<Complex> cond;
    for (int i = 1; i <= n; ++i) {
        const std::size_t m = static_cast<std::size_t>(n - i + 1);  // sites i..n remain in `left`
        // contract sites n, n-1, ..., i+1 (their current values) from the tail
        cond.assign(left.begin(), left.end());
        for (int j = n; j > i; --j) {
            const std::size_t half = std::size_t{1} << (j - i);
            for (std::size_t idx = 0; idx < half; ++idx)
                cond[idx] = std::conj(sites[j - 1][0]) * cond[2 * idx] +
                            std::conj(sites[j - 1][1]) * cond[2 * idx + 1];
            cond.resize(half);
        }
        // cond now holds (A, B): overlap = conj(u_i) A + conj(d_i) B
        const double nrm = std::sqrt(std::norm(cond[0]) + std::norm(cond[1]));
        if (nrm > 0.0) {
            sites[i - 1][0] = cond[0] / nrm;
            sites[i - 1][1] = cond[1] / nrm;
            lambda = nrm;
        }
        // absorb site i into the left contraction
        const std::size_t half = std::size_t{1} << (m - 1);
        for (std::size_t idx = 0; idx < half; ++idx)
            left[idx] = std::conj(sites[i - 1][0]) * left[idx] +
                        std::conj(sites[i - 1][1]) * left[half + idx];
        left.resize(half);
    }
    return lambda;
}

inline double converge_from(const DenseState& state, std::vector<SiteVec> sites,
                            std::vector<SiteVec>& out) {
    double lambda = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        const double next = sweep_once(state, sites);
        if (next - lambda < 1e-12 && iter > 0) {
            lambda = std::max(lambda, next);
            break;
        }
        lambda = next;
    }
    out = std::move(sites);
    return lambda;
}

}  // namespace detail

// Unrestricted maximization of |<Phi|Psi>| over all product states:
// alternating single-site updates from 32 random starts plus the
// symmetric-ansatz start.
inline FullMaxResult maximize_overlap_full(const DenseState& state, int random_starts = 32,
                                           std::uint64_t seed = 20040526) {
    if (state.n > 10)
        throw std::invalid_argument("maximize_overlap_full: n must be <= 10");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<std::vector<detail::SiteVec>> starts;
    {
        const SymmetricMax sym = maximize_overlap_symmetric(state);
        const detail::SiteVec v{std::cos(0.5 * sym.xi_star), std::sin(0.5 * sym.xi_star)};
        starts.emplace_back(static_cast<std::size_t>(state.n), v);
    }
    for (int s = 0; s < random_starts; ++s) {
        std::vector<detail::SiteVec> sites(static_cast<std::size_t>(state.n));
        for (auto& v : sites) {
            const double ct = 2.0 * unif(rng) - 1.0;  // uniform on the Bloch sphere
            const double ph = 2.0 * std::numbers::pi * unif(rng);
            const double half = 0.5 * std::acos(ct);
            v = {std::cos(half), std::polar(std::sin(half), ph)};
        }
        starts.push_back(std::move(sites));
    }

    FullMaxResult result;
    double worst = std::numeric_limits<double>::infinity();
    std::vector<detail::SiteVec> best_sites;
    for (auto& start : starts) {
        std::vector<detail::SiteVec> converged;
        const double lambda = detail::converge_from(state, std::move(start), converged);
        worst = std::min(worst, lambda);
        if (lambda > result.lambda) {
            result.lambda = lambda;
            best_sites = std::move(converged);
        }
    }
    result.multistart_spread = result.lambda - worst;

    result.best.xi.resize(static_cast<std::size_t>(state.n));
    result.best.phi.resize(static_cast<std::size_t>(state.n));
    for (int i = 0; i < state.n; ++i) {
        const Complex u = best_sites[static_cast<std::size_t>(i)][0];
        const Complex d = best_sites[static_cast<std::size_t>(i)][1];
        // strip the global phase so the up coefficient is real nonnegative
        const double au = std::abs(u);
        result.best.xi[static_cast<std::size_t>(i)] =
            2.0 * std::asin(std::clamp(au, 0.0, 1.0));
        const Complex rot = au > 0.0 ? std::conj(u) / au : Complex(1.0);
        double phase = std::arg(d * rot);
        if (phase < 0.0) phase += 2.0 * std::numbers::pi;
        if (phase >= 2.0 * std::numbers::pi) phase = 0.0;
        result.best.phi[static_cast<std::size_t>(i)] = std::abs(d) > 1e-15 ? phase : 0.0;
    }
    return result;
}

// Unit vector on the Bloch sphere; the symmetric ansatz corresponds to
// (sin xi, 0, cos xi).
struct BlochDirection {
    double x = 0.0, y = 0.0, z = 1.0;

    BlochDirection(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        const double nrm = std::sqrt(x * x + y * y + z * z);
        if (std::abs(nrm - 1.0) > 1e-12)
            throw std::invalid_argument("BlochDirection: vector must be unit length");
    }

    static BlochDirection from_xi(double xi) {
        return BlochDirection(std::sin(xi), 0.0, std::cos(xi));
    }
};

// Product state with every site polarized along the given direction.
inline DenseState polarized_state(int n, const BlochDirection& dir) {
    const double theta = std::acos(std::clamp(dir.z, -1.0, 1.0));
    const double phi = std::atan2(dir.y, dir.x);
    const Complex up = std::cos(0.5 * theta);
    const Complex down = std::polar(std::sin(0.5 * theta), phi);
    const std::uint32_t dim = 1u << n;
    Eigen::VectorXcd amp(dim);
    for (std::uint32_t b = 0; b < dim; ++b) {
        Complex a = 1.0;
        for (int j = 1; j <= n; ++j) a *= site_bit(b, j, n) ? down : up;
        amp(b) = a;
    }
    return DenseState(n, amp);
}

struct SubsetExpansion {
    std::vector<double> by_size;      // 2^{-n} sum over subsets of fixed size
    std::vector<double> cumulative;   // partial sums by subset size
    double projector_expectation = 0.0;  // full sum = |<Phi(dir)|Psi>|^2
};

// Complete expansion of <Psi| prod_j (1 + dir.sigma_j)/2 |Psi> over subsets
// of sites; cumulative[s] collects all correlators of order <= s.
inline SubsetExpansion correlator_decomposition(const DenseState& state,
                                                const BlochDirection& dir) {
    if (state.n > 8)
        throw std::invalid_argument("correlator_decomposition: n must be <= 8");
    const int n = state.n;
    const std::uint32_t dim = 1u << n;

    SubsetExpansion out;
    out.by_size.assign(static_cast<std::size_t>(n) + 1, 0.0);

    Eigen::VectorXcd scratch(dim);
    for (std::uint32_t subset = 0; subset < dim; ++subset) {
        scratch = state.amp;
        for (int j = 1; j <= n; ++j) {
            if (!(subset >> (n - j) & 1u)) continue;
            // apply dir.sigma at site j
            const std::uint32_t mask = 1u << (n - j);
            for (std::uint32_t b = 0; b < dim; ++b) {
                if (b & mask) continue;  // handle each flip pair once, from the up side
                const std::uint32_t bd = b | mask;
                const Complex a_up = scratch(b), a_dn = scratch(bd);
                scratch(b) = dir.z * a_up + Complex(dir.x, -dir.y) * a_dn;
                scratch(bd) = Complex(dir.x, dir.y) * a_up - dir.z * a_dn;
            }
        }
        const double expect = std::real(state.amp.dot(scratch));
        out.by_size[static_cast<std::size_t>(__builtin_popcount(subset))] += expect;
    }

    const double scale = 1.0 / static_cast<double>(dim);
    double running = 0.0;
    out.cumulative.clear();
    for (double& v : out.by_size) {
        v *= scale;
        running += v;
        out.cumulative.push_back(running);
    }
    out.projector_expectation = running;
    return out;
}

// Convenience states for the normalization checks.

inline DenseState ghz_state(int n) {
    const std::uint32_t dim = 1u << n;
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(dim);
    amp(0) = amp(dim - 1) = 1.0 / std::numbers::sqrt2;
    return DenseState(n, amp);
}

inline DenseState product_of_bell_pairs() {
    Eigen::VectorXcd pair = Eigen::VectorXcd::Zero(4);
    pair(0) = pair(3) = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXcd amp(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) amp(4 * a + b) = pair(a) * pair(b);
    return DenseState(4, amp);
}

inline DenseState random_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::uint32_t dim = 1u << n;
    Eigen::VectorXcd amp(dim);
    for (std::uint32_t b = 0; b < dim; ++b) amp(b) = Complex(gauss(rng), gauss(rng));
    amp /= amp.norm();
    return DenseState(n, amp);
}

}  // namespace xyent::oracle
