// Tail-index estimation from iterate streams: per-group block estimator on
// centered increments, aggregated to beta_S = max over groups.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "levydim/trajectory.hpp"

namespace levydim {

// Assignment of every parameter coordinate to a named group (e.g. a layer).
struct GroupMap {
    std::vector<int> assignment;    // size d; values in [0, names.size())
    std::vector<std::string> names; // one label per group

    static GroupMap single(int dim, std::string name = "all");
    int group_count() const { return static_cast<int>(names.size()); }
    void validate(int dim) const; // throws std::invalid_argument
};

// Half-open index range [begin, end) into a trajectory's recorded points.
struct IterateWindow {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Window covering the last `fraction` of the recorded points (at least 2).
IterateWindow last_fraction_window(const Trajectory& traj, double fraction);

struct IncrementSamples {
    std::vector<std::vector<double>> groups; // per group: centered increments,
                                             // flattened across coords and steps
    std::vector<char> degenerate;            // all increments exactly zero
};

// Per group: successive differences w_{k+1} - w_k of the group's coordinates
// over the window, minus the group-wide mean increment.  A window shorter
// than 2 iterates is rejected.
IncrementSamples preprocess_increments(const Trajectory& traj, const GroupMap& group_map,
                                       IterateWindow window);

// Block tail-index estimator.  With K = k1*k2 samples (largest usable prefix
// if the length is not an exact multiple) and Y_i the sum of the i-th block
// of k1 samples,
//   1/alpha_hat = (1/log k1) * [ mean_i log|Y_i| - mean_j log|X_j| ],
// which is exact in expectation for strictly stable inputs because block
// sums scale as k1^{1/alpha}.  Exact zeros are perturbed to the smallest
// positive double before the log (a warning is printed once per call).
// Requires k1 >= 2 and k2 >= 2.  Returns +infinity if the bracket is <= 0
// (cannot happen for genuinely heavy-tailed input).
double estimate_alpha(std::span<const double> samples, std::size_t k1);

// k1 = 0 selects the default round(sqrt(K)) balanced-block policy.
struct K1Policy {
    std::size_t fixed_k1 = 0;
};

struct TailIndexReport {
    std::vector<std::string> group_names;
    std::vector<double> alpha_hats;          // raw estimates; may exceed 2
    std::vector<std::size_t> sample_counts;  // per-group K actually used
    std::vector<char> degenerate;            // propagated from preprocessing
    double beta_s = 0.0;                     // max of alpha_hats
    bool any_above_two = false;              // raw estimate exceeded 2 somewhere
};

TailIndexReport estimate_beta(const Trajectory& traj, const GroupMap& group_map,
                              IterateWindow window, K1Policy policy = {});

std::string tail_report_json(const TailIndexReport& report);

} // namespace levydim
