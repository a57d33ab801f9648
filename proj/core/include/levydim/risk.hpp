// Empirical / population risk and the trajectory-wise generalization gap.
#pragma once

#include <span>

#include "levydim/dataset.hpp"
#include "levydim/objective.hpp"
#include "levydim/trajectory.hpp"

namespace levydim {

struct RiskReport {
    double empirical = 0.0;      // empirical risk at the maximizing iterate
    double population = 0.0;     // population risk at the maximizing iterate
    double gap = 0.0;            // max over iterates of |empirical - population|
    std::size_t argmax_time = 0; // trajectory index attaining the max
};

// Mean of loss over the dataset.  empirical_risk / population_risk are the
// same computation on different sets: the "population" here is always a
// fixed finite surrogate sample, not an integral.
double empirical_risk(const Objective& loss, std::span<const double> w, const Dataset& data);
double population_risk(const Objective& loss, std::span<const double> w, const Dataset& population);

// Scans every recorded iterate and reports the largest absolute difference
// between empirical risk on `s` and risk on `population`.
RiskReport generalization_gap(const Objective& loss, const Trajectory& traj, const Dataset& s,
                              const Dataset& population);

} // namespace levydim
