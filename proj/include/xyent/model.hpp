#pragma once

// Model parameters, parity sectors, wavevector grids and Bogoliubov angles of
// the periodic spin-1/2 XY chain. Everything downstream (overlaps, quadrature,
// scans) is built on the (k, theta) spectra produced here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace xyent {

// Location in the (r, h) phase diagram: r is the x/y coupling anisotropy
// (r=0 isotropic XX limit, r=1 Ising limit), h the transverse field.
struct ModelPoint {
    double r;
    double h;

    ModelPoint(double r_, double h_) : r(r_), h(h_) {
        if (!std::isfinite(r) || r < 0.0 || r > 1.0)
            throw std::invalid_argument("ModelPoint: r must lie in [0, 1]");
        if (!std::isfinite(h) || h < 0.0)
            throw std::invalid_argument("ModelPoint: h must be finite and >= 0");
    }
};

// A chain of n spins restricted to one fermion-parity sector.
// sector 0 is the even-parity sector (lowest state Psi_0), sector 1 the odd
// one (Psi_1).
struct ChainSpec {
    long long n;
    int sector;

    ChainSpec(long long n_, int sector_) : n(n_), sector(sector_) {
        if (n < 2)
            throw std::invalid_argument("ChainSpec: n must be >= 2");
        if (sector != 0 && sector != 1)
            throw std::invalid_argument("ChainSpec: sector must be 0 or 1");
    }

    bool even_n() const { return n % 2 == 0; }
};

// Paired positive wavevectors of one parity sector, strictly inside (0, pi).
//
// The even sector quantizes momenta on the half-integer grid
// k = (2pi/N)(m + 1/2), m = 0, 1, ...; the odd sector on the integer grid
// k = (2pi/N) m, m = 1, 2, ....  Unpaired momenta (k = 0 and k = pi, when
// they belong to a grid) carry no factor in the overlap product -- their
// contribution is the parity-dependent prefactor -- so the product range is
// exactly the sector grid intersected with (0, pi).  This convention is the
// one validated against the exact-diagonalization oracle for all N <= 12;
// see test_model.cpp and test_oracle.cpp.
inline std::vector<double> wavevectors(const ChainSpec& spec) {
    std::vector<double> ks;
    const double n = static_cast<double>(spec.n);
    if (spec.sector == 0) {
        // 2m + 1 < N  <=>  k < pi (exact in integer arithmetic)
        for (long long m = 0; 2 * m + 1 < spec.n; ++m)
            ks.push_back(std::numbers::pi * static_cast<double>(2 * m + 1) / n);
    } else {
        // 2m < N
        for (long long m = 1; 2 * m < spec.n; ++m)
            ks.push_back(2.0 * std::numbers::pi * static_cast<double>(m) / n);
    }
    return ks;
}

// Number of paired modes without materializing the grid.
inline long long wavevector_count(const ChainSpec& spec) {
    if (spec.sector == 0) return spec.n / 2;          // even sector
    return (spec.n - 1) / 2;                          // odd sector
}

// Mode-mixing angle: tan 2theta = r sin k / (h - cos k), resolved through
// atan2 so the branch flip at h = cos k needs no case analysis.
// 2theta lands in [0, pi] for r >= 0 and k in (0, pi), hence theta in
// [0, pi/2] and both cos theta and sin theta are nonnegative.
inline double bogoliubov_angle(const ModelPoint& point, double k) {
    const double num = point.r * std::sin(k);
    const double den = point.h - std::cos(k);
    if (num == 0.0 && den == 0.0) return 0.0;  // degenerate mode, see below
    return 0.5 * std::atan2(num, den);
}

// True only at r = 0 with h = cos k exactly: the mixing angle is undefined
// there and is pinned to 0 (mode treated as field-aligned).
inline bool mode_degenerate(const ModelPoint& point, double k) {
    return point.r * std::sin(k) == 0.0 && point.h - std::cos(k) == 0.0;
}

struct SpectrumMode {
    double k;
    double theta;
    double coeff_cos;  // cos(theta)
    double coeff_cot;  // sin(theta) * cot(k/2)
};

// Immutable per-(point, spec) spectrum; safe to share across scan workers.
// coeff_cos/coeff_cot are cached so one overlap factor costs two multiplies.
struct SpectrumData {
    ChainSpec spec;
    std::vector<SpectrumMode> modes;
    bool degenerate = false;

    SpectrumData(const ModelPoint& point, const ChainSpec& spec_) : spec(spec_) {
        const std::vector<double> ks = wavevectors(spec_);
        modes.reserve(ks.size());
        for (double k : ks) {
            const double theta = bogoliubov_angle(point, k);
            degenerate = degenerate || mode_degenerate(point, k);
            modes.push_back({k, theta, std::cos(theta),
                             std::sin(theta) / std::tan(0.5 * k)});
        }
    }
};

inline SpectrumData make_spectrum(const ModelPoint& point, const ChainSpec& spec) {
    return SpectrumData(point, spec);
}

}  // namespace xyent
