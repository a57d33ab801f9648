#include <cmath>
#include <stdexcept>

#include "levydim/risk.hpp"

namespace levydim {

namespace {

double dataset_risk(const Objective& loss, std::span<const double> w, const Dataset& data) {
    if (data.size() == 0) throw std::invalid_argument("risk: empty dataset");
    double s = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        s += loss.loss(w, data.row(i), data.labels[i]);
    }
    return s / static_cast<double>(data.size());
}

} // namespace

double empirical_risk(const Objective& loss, std::span<const double> w, const Dataset& data) {
    return dataset_risk(loss, w, data);
}

double population_risk(const Objective& loss, std::span<const double> w,
                       const Dataset& population) {
    return dataset_risk(loss, w, population);
}

RiskReport generalization_gap(const Objective& loss, const Trajectory& traj, const Dataset& s,
                              const Dataset& population) {
    if (traj.size() == 0) throw std::invalid_argument("generalization_gap: empty trajectory");
    if (s.dim != population.dim) {
        throw std::invalid_argument("generalization_gap: dataset dimensions differ");
    }
    if (static_cast<std::size_t>(traj.dim) != loss.param_dim(s.dim)) {
        throw std::invalid_argument("generalization_gap: trajectory/parameter dimension mismatch");
    }
    RiskReport report;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto w = traj.point(k);
        const double emp = dataset_risk(loss, w, s);
        const double pop = dataset_risk(loss, w, population);
        const double g = std::abs(emp - pop);
        if (k == 0 || g > report.gap) {
            report.empirical = emp;
            report.population = pop;
            report.gap = g;
            report.argmax_time = k;
        }
    }
    return report;
}

} // namespace levydim
