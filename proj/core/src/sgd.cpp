#include "levydim/sgd.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace levydim {

Trajectory run_sgd(const Objective& loss, const Dataset& data, double eta, int batch,
                   int epochs, RngStream& rng, std::span<const double> w0,
                   std::vector<std::size_t>* index_log) {
    const std::size_t n = data.size();
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("run_sgd: eta must be positive");
    }
    if (batch < 1 || static_cast<std::size_t>(batch) > n) {
        throw std::invalid_argument("run_sgd: batch must lie in [1, n]");
    }
    if (epochs < 0) throw std::invalid_argument("run_sgd: epochs must be >= 0");

    const std::size_t dim = loss.param_dim(data.dim);
    if (!w0.empty() && w0.size() != dim) {
        throw std::invalid_argument("run_sgd: w0 dimension mismatch");
    }
    const auto ub = static_cast<std::size_t>(batch);
    const std::size_t steps_per_epoch = n / ub;
    const std::size_t total_steps = steps_per_epoch * static_cast<std::size_t>(epochs);

    Trajectory traj;
    traj.dim = static_cast<int>(dim);
    traj.step = eta;
    traj.horizon = eta * static_cast<double>(total_steps);
    traj.seed = rng.seed();
    traj.times.reserve(total_steps + 1);
    traj.points.reserve((total_steps + 1) * dim);

    std::vector<double> w(dim, 0.0);
    if (!w0.empty()) w.assign(w0.begin(), w0.end());
    std::vector<double> grad(dim);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});

    traj.push_back(0.0, w);
    const double inv_batch = 1.0 / static_cast<double>(batch);
    for (std::size_t k = 1; k <= total_steps; ++k) {
        // partial Fisher-Yates over the index array: uniform without
        // replacement regardless of the array's current permutation
        for (std::size_t j = 0; j < ub; ++j) {
            const auto r = j + rng.uniform_index(n - j);
            std::swap(idx[j], idx[r]);
        }
        if (index_log) index_log->insert(index_log->end(), idx.begin(), idx.begin() + ub);

        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t j = 0; j < ub; ++j) {
            loss.add_loss_grad(w, data.row(idx[j]), data.labels[idx[j]], inv_batch, grad);
        }
        for (std::size_t c = 0; c < dim; ++c) {
            w[c] -= eta * grad[c];
            if (!std::isfinite(w[c])) {
                throw std::runtime_error("run_sgd: non-finite iterate coordinate " +
                                         std::to_string(c) + " at step " + std::to_string(k));
            }
        }
        traj.push_back(eta * static_cast<double>(k), w);
    }
    return traj;
}

} // namespace levydim
