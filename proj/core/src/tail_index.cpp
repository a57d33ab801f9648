#include "levydim/tail_index.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace levydim {

GroupMap GroupMap::single(int dim, std::string name) {
    GroupMap gm;
    gm.assignment.assign(static_cast<std::size_t>(dim), 0);
    gm.names.push_back(std::move(name));
    return gm;
}

void GroupMap::validate(int dim) const {
    if (names.empty()) throw std::invalid_argument("group_map: no groups");
    if (assignment.size() != static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("group_map: assignment size does not match dimension");
    }
    for (int g : assignment) {
        if (g < 0 || g >= group_count()) {
            throw std::invalid_argument("group_map: coordinate assigned to unknown group");
        }
    }
}

IterateWindow last_fraction_window(const Trajectory& traj, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("window: fraction must lie in (0, 1]");
    }
    const std::size_t n = traj.size();
    auto len = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    len = std::max<std::size_t>(len, 2);
    len = std::min(len, n);
    return {n - len, n};
}

IncrementSamples preprocess_increments(const Trajectory& traj, const GroupMap& group_map,
                                       IterateWindow window) {
    group_map.validate(traj.dim);
    if (window.end > traj.size() || window.begin >= window.end) {
        throw std::invalid_argument("preprocess_increments: window out of range");
    }
    if (window.end - window.begin < 2) {
        throw std::invalid_argument("preprocess_increments: window must hold at least 2 iterates");
    }

    const auto n_groups = static_cast<std::size_t>(group_map.group_count());
    IncrementSamples out;
    out.groups.resize(n_groups);
    out.degenerate.assign(n_groups, 1);

    const std::size_t steps = window.end - window.begin - 1;
    std::vector<std::size_t> group_size(n_groups, 0);
    for (int g : group_map.assignment) ++group_size[static_cast<std::size_t>(g)];
    for (std::size_t g = 0; g < n_groups; ++g) out.groups[g].reserve(group_size[g] * steps);

    for (std::size_t k = window.begin; k + 1 < window.end; ++k) {
        const auto w0 = traj.point(k);
        const auto w1 = traj.point(k + 1);
        for (int c = 0; c < traj.dim; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            const auto g = static_cast<std::size_t>(group_map.assignment[uc]);
            const double inc = w1[uc] - w0[uc];
            if (inc != 0.0) out.degenerate[g] = 0;
            out.groups[g].push_back(inc);
        }
    }
    for (auto& samples : out.groups) {
        double mean = 0.0;
        for (double v : samples) mean += v;
        mean /= static_cast<double>(samples.size());
        for (double& v : samples) v -= mean;
    }
    return out;
}

double estimate_alpha(std::span<const double> samples, std::size_t k1) {
    if (k1 < 2) throw std::invalid_argument("estimate_alpha: k1 must be >= 2");
    const std::size_t k2 = samples.size() / k1;
    if (k2 < 2) {
        throw std::invalid_argument("estimate_alpha: need at least 2 full blocks of k1 samples");
    }
    const std::size_t K = k1 * k2; // largest usable prefix

    constexpr double tiny = std::numeric_limits<double>::denorm_min();
    std::size_t zeros = 0;
    double mean_log_x = 0.0;
    double mean_log_y = 0.0;
    for (std::size_t i = 0; i < k2; ++i) {
        double block_sum = 0.0;
        for (std::size_t j = 0; j < k1; ++j) {
            double x = samples[i * k1 + j];
            block_sum += x;
            if (x == 0.0) {
                x = tiny;
                ++zeros;
            }
            mean_log_x += std::log(std::abs(x));
        }
        if (block_sum == 0.0) block_sum = tiny;
        mean_log_y += std::log(std::abs(block_sum));
    }
    if (zeros > 0) {
        std::cerr << "estimate_alpha: warning: " << zeros
                  << " exact-zero samples perturbed before log\n";
    }
    mean_log_x /= static_cast<double>(K);
    mean_log_y /= static_cast<double>(k2);

    const double inv_alpha = (mean_log_y - mean_log_x) / std::log(static_cast<double>(k1));
    if (!(inv_alpha > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / inv_alpha;
}

TailIndexReport estimate_beta(const Trajectory& traj, const GroupMap& group_map,
                              IterateWindow window, K1Policy policy) {
    const IncrementSamples samples = preprocess_increments(traj, group_map, window);

    TailIndexReport report;
    report.group_names = group_map.names;
    report.degenerate = samples.degenerate;
    for (const auto& group : samples.groups) {
        std::size_t k1 = policy.fixed_k1;
        if (k1 == 0) {
            k1 = static_cast<std::size_t>(
                std::llround(std::sqrt(static_cast<double>(group.size()))));
        }
        k1 = std::max<std::size_t>(k1, 2);
        const double alpha_hat = estimate_alpha(group, k1);
        report.alpha_hats.push_back(alpha_hat);
        report.sample_counts.push_back((group.size() / k1) * k1);
        if (alpha_hat > 2.0) report.any_above_two = true;
    }
    report.beta_s = *std::max_element(report.alpha_hats.begin(), report.alpha_hats.end());
    return report;
}

std::string tail_report_json(const TailIndexReport& report) {
    nlohmann::json j;
    j["beta_s"] = report.beta_s;
    j["any_above_two"] = report.any_above_two;
    auto& groups = j["groups"];
    groups = nlohmann::json::array();
    for (std::size_t g = 0; g < report.group_names.size(); ++g) {
        nlohmann::json item;
        item["name"] = report.group_names[g];
        item["alpha_hat"] = report.alpha_hats[g];
        item["sample_count"] = report.sample_counts[g];
        item["degenerate"] = static_cast<bool>(report.degenerate[g]);
        groups.push_back(item);
    }
    return j.dump(2);
}

} // namespace levydim
