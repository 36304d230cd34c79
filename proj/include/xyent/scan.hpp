#pragma once

// Parallel (r, h) grid evaluation. Grid points are independent work items;
// rows land in a pre-sized buffer indexed by grid position, so output order
// and content are identical at any parallelism.

#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "xyent/criticality.hpp"

namespace xyent {

struct ScanGrid {
    std::vector<double> r_values;
    std::vector<double> h_values;
    std::optional<long long> n;  // nullopt = thermodynamic limit
    int sector = 0;
    std::optional<double> alpha;

    void validate() const {
        if (r_values.empty() || h_values.empty())
            throw std::invalid_argument("ScanGrid: r and h lists must be non-empty");
        for (std::size_t i = 0; i + 1 < r_values.size(); ++i)
            if (!(r_values[i + 1] > r_values[i]))
                throw std::invalid_argument("ScanGrid: r_values must be strictly increasing");
        for (std::size_t i = 0; i + 1 < h_values.size(); ++i)
            if (!(h_values[i + 1] > h_values[i]))
                throw std::invalid_argument("ScanGrid: h_values must be strictly increasing");
        for (double r : r_values) (void)ModelPoint(r, 0.0);
        for (double h : h_values) (void)ModelPoint(0.0, h);
        if (n && *n < 2) throw std::invalid_argument("ScanGrid: n must be >= 2");
        if (sector != 0 && sector != 1)
            throw std::invalid_argument("ScanGrid: sector must be 0 or 1");
        if (alpha && !(*alpha >= 0.0 && *alpha <= 0.5 * std::numbers::pi))
            throw std::invalid_argument("ScanGrid: alpha must lie in [0, pi/2]");
    }
};

struct ScanRow {
    double r = 0.0;
    double h = 0.0;
    std::optional<long long> n;
    double density = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> derivative;
    std::string status = "ok";
};

struct ScanOptions {
    int jobs = 0;  // 0 = hardware concurrency
    bool with_derivative = false;
    double derivative_step = 1e-4;
    QuadratureSpec quad{};
    MaximizeOptions xi_opt{};
};

// One row per grid point in r-major order; per-point failures are recorded in
// the status column and never abort the scan.
inline std::vector<ScanRow> surface_scan(const ScanGrid& grid, const ScanOptions& opt = {}) {
    grid.validate();
    const std::size_t nr = grid.r_values.size(), nh = grid.h_values.size();
    std::vector<ScanRow> rows(nr * nh);

    DensityTarget target;
    target.n = grid.n;
    target.sector = grid.sector;
    target.alpha = grid.alpha;
    target.quad = opt.quad;
    target.xi_opt = opt.xi_opt;

    auto compute = [&](std::size_t idx) {
        ScanRow& row = rows[idx];
        row.r = grid.r_values[idx / nh];
        row.h = grid.h_values[idx % nh];
        row.n = grid.n;
        try {
            row.density = target.density(row.r, row.h);
            if (opt.with_derivative)
                row.derivative =
                    field_derivative(target, ModelPoint(row.r, row.h), opt.derivative_step)
                        .value;
        } catch (const std::exception& e) {
            std::string reason = e.what();
            for (char& ch : reason)
                if (ch == ',' || ch == '\n') ch = ';';
            row.status = "error:" + reason;
        }
    };

    unsigned jobs = opt.jobs > 0 ? static_cast<unsigned>(opt.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(rows.size()));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) compute(i);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
                compute(i);
        });
    for (std::thread& w : workers) w.join();
    return rows;
}

}  // namespace xyent
