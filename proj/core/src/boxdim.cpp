#include "levydim/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "levydim/csv.hpp"

namespace levydim {

std::size_t box_count(std::span<const double> flat_points, int dim, double delta) {
    if (dim < 1) throw std::invalid_argument("box_count: dimension must be >= 1");
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("box_count: delta must be positive");
    }
    const auto d = static_cast<std::size_t>(dim);
    if (flat_points.empty() || flat_points.size() % d != 0) {
        throw std::invalid_argument("box_count: point buffer empty or not a multiple of dim");
    }
    const std::size_t n = flat_points.size() / d;

    // exact cell keys; sort-and-unique avoids any hashing collisions
    std::vector<std::int64_t> cells(n * d);
    for (std::size_t i = 0; i < flat_points.size(); ++i) {
        const double q = std::floor(flat_points[i] / delta);
        if (!(std::abs(q) < 9.0e15)) { // beyond exact integer doubles
            throw std::invalid_argument("box_count: delta too small relative to coordinates");
        }
        cells[i] = static_cast<std::int64_t>(q);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(cells.begin() + static_cast<std::ptrdiff_t>(a * d),
                                            cells.begin() + static_cast<std::ptrdiff_t>((a + 1) * d),
                                            cells.begin() + static_cast<std::ptrdiff_t>(b * d),
                                            cells.begin() + static_cast<std::ptrdiff_t>((b + 1) * d));
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (less(order[i - 1], order[i])) ++distinct;
    }
    return distinct;
}

std::size_t box_count(const Trajectory& traj, double delta) {
    return box_count(traj.points, traj.dim, delta);
}

DimensionEstimate estimate_dimension(const Trajectory& traj, int scale_count,
                                     FitWindow window) {
    if (scale_count < 2) throw std::invalid_argument("estimate_dimension: need >= 2 scales");
    if (traj.size() == 0) throw std::invalid_argument("estimate_dimension: empty trajectory");

    DimensionEstimate est;
    const auto d = static_cast<std::size_t>(traj.dim);
    const std::size_t n = traj.size();

    double extent = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = traj.points[i * d + c];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        extent = std::max(extent, hi - lo);
    }
    if (extent == 0.0) {
        est.degenerate = true;
        return est;
    }

    est.scales.reserve(static_cast<std::size_t>(scale_count));
    est.counts.reserve(static_cast<std::size_t>(scale_count));
    double delta = extent;
    for (int k = 0; k < scale_count; ++k) {
        est.scales.push_back(delta);
        est.counts.push_back(box_count(traj, delta));
        delta *= 0.5;
    }

    const auto max_count =
        static_cast<std::size_t>(window.max_count_fraction * static_cast<double>(n));
    est.used.assign(est.scales.size(), 0);
    std::size_t usable = 0;
    for (std::size_t k = 0; k < est.scales.size(); ++k) {
        if (est.counts[k] >= window.min_count && est.counts[k] <= max_count) {
            est.used[k] = 1;
            ++usable;
        }
    }
    if (usable < 2) {
        // fallback: anything that is not flat-1 or fully saturated
        est.low_quality = true;
        usable = 0;
        for (std::size_t k = 0; k < est.scales.size(); ++k) {
            est.used[k] = est.counts[k] >= 2 && est.counts[k] < n ? 1 : 0;
            usable += est.used[k];
        }
        if (usable < 2) {
            est.degenerate = true;
            std::fill(est.used.begin(), est.used.end(), char{0});
            return est;
        }
    }
    if (usable < 4) est.low_quality = true;

    // least-squares fit of log(count) on log(1/delta) across the retained
    // window; its r^2 grades how well the data follow a single power law
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    double m = 0.0;
    std::size_t finest = 0;
    for (std::size_t k = 0; k < est.scales.size(); ++k) {
        if (!est.used[k]) continue;
        const double x = -std::log(est.scales[k]);
        const double y = std::log(static_cast<double>(est.counts[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        m += 1.0;
        finest = k;
    }
    const double var_x = sxx - sx * sx / m;
    const double cov = sxy - sx * sy / m;
    const double var_y = syy - sy * sy / m;
    const double fit_slope = var_x > 0.0 ? cov / var_x : 0.0;
    est.r_squared = var_x > 0.0 && var_y > 0.0
                        ? std::clamp(cov * cov / (var_x * var_y), 0.0, 1.0)
                        : 0.0;

    // The dimension readout is the defining ratio log N_delta / log(1/delta)
    // at the finest retained scale: the deepest point of the scaling regime
    // enters undamped, where a whole-window fit would drag the estimate
    // toward the shallow coarse scales.  When even the finest retained scale
    // is coarser than 1 the ratio is unstable, so fall back to the fit.
    const double x_fine = -std::log(est.scales[finest]);
    if (x_fine > 0.0) {
        est.raw_slope = std::log(static_cast<double>(est.counts[finest])) / x_fine;
    } else {
        est.raw_slope = fit_slope;
        est.low_quality = true;
    }
    est.slope = std::clamp(est.raw_slope, 0.0, static_cast<double>(traj.dim));
    return est;
}

double analytic_bg_index(std::span<const double> alphas) {
    if (alphas.empty()) throw std::invalid_argument("analytic_bg_index: empty input");
    double m = 0.0;
    for (double a : alphas) {
        if (!(a > 0.0) || !(a <= 2.0)) {
            throw std::invalid_argument("analytic_bg_index: indices must lie in (0, 2]");
        }
        m = std::max(m, a);
    }
    return m;
}

void write_dimension_csv(const DimensionEstimate& est, std::ostream& os) {
    write_csv_row(os, {"delta", "count", "log_delta", "log_count", "used_in_fit"});
    for (std::size_t k = 0; k < est.scales.size(); ++k) {
        write_csv_row(os, {format_double(est.scales[k]), format_u64(est.counts[k]),
                           format_double(std::log(est.scales[k])),
                           format_double(std::log(static_cast<double>(est.counts[k]))),
                           est.used[k] ? "1" : "0"});
    }
}

std::string dimension_json(const DimensionEstimate& est) {
    nlohmann::json j;
    j["slope"] = est.slope;
    j["raw_slope"] = est.raw_slope;
    j["r_squared"] = est.r_squared;
    j["degenerate"] = est.degenerate;
    j["low_quality"] = est.low_quality;
    auto& rows = j["scales"];
    rows = nlohmann::json::array();
    for (std::size_t k = 0; k < est.scales.size(); ++k) {
        nlohmann::json row;
        row["delta"] = est.scales[k];
        row["count"] = est.counts[k];
        row["used"] = static_cast<bool>(est.used[k]);
        rows.push_back(row);
    }
    return j.dump(2);
}

} // namespace levydim
