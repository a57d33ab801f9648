// Minkowski (box-counting) dimension estimation for trajectory images.
//
// The mesh is the half-open axis-aligned grid anchored at the origin:
// a point x lies in cell (floor(x_1/delta), ..., floor(x_d/delta)).  Points
// exactly on a cell boundary follow floating-point floor division; tests use
// power-of-two scales or generic offsets where the rule is unambiguous.
//
// Hausdorff dimension itself is not computable (it is an infimum over
// uncountable covers); the box-counting slope is the standard surrogate and
// coincides with it for the self-similar sets treated here.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levydim/trajectory.hpp"

namespace levydim {

// Number of occupied delta-mesh cells of a point set given as a flat
// row-major (count x dim) buffer.
std::size_t box_count(std::span<const double> flat_points, int dim, double delta);
std::size_t box_count(const Trajectory& traj, double delta);

// Scale-selection policy: a scale enters the fit only when its count lies in
// [min_count, max_count_fraction * N].  Counts below saturate at the finite
// sample; counts above are the handful of coarse boxes at the top.
struct FitWindow {
    std::size_t min_count = 10;
    double max_count_fraction = 0.1;
};

struct DimensionEstimate {
    double slope = 0.0;     // dimension readout, clipped to [0, d]
    double raw_slope = 0.0; // unclipped readout
    double r_squared = 0.0; // least-squares fit quality over the window
    std::vector<double> scales;       // delta_k = delta0 * 2^-k, all computed
    std::vector<std::size_t> counts;  // box counts per scale
    std::vector<char> used;           // scale entered the window
    bool degenerate = false;          // all points identical
    bool low_quality = false;         // fewer than 4 usable scales or fallback window
};

// Counts over geometric scales delta_k = delta0 * 2^-k, k = 0..scale_count-1,
// with delta0 the largest bounding-box extent of the points.  The slope is
// the defining ratio log N_delta / log(1/delta) evaluated at the finest scale
// retained by the window policy; r_squared reports how well a least-squares
// power-law fit tracks the whole window.  Trajectories should carry >= 1e3
// points for the readout to mean much; degenerate input yields slope 0 with
// the flag set.
DimensionEstimate estimate_dimension(const Trajectory& traj, int scale_count = 24,
                                     FitWindow window = {});

// beta_S-style analytic Blumenthal-Getoor index: max over per-group tail
// indices (each must lie in (0, 2]).
double analytic_bg_index(std::span<const double> alphas);

// CSV of (delta, count, log_delta, log_count, used_in_fit).
void write_dimension_csv(const DimensionEstimate& est, std::ostream& os);

// Summary (slope, raw slope, r^2, flags, scale table) as a JSON document.
std::string dimension_json(const DimensionEstimate& est);

} // namespace levydim
