#include "levydim/process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace levydim {

Coefficient Coefficient::scalar(double c) {
    Coefficient k;
    k.kind_ = Kind::Scalar;
    k.value_ = c;
    return k;
}

Coefficient Coefficient::diagonal(std::vector<double> diag) {
    if (diag.empty()) throw std::invalid_argument("coefficient: empty diagonal");
    Coefficient k;
    k.kind_ = Kind::Diagonal;
    k.dim_ = static_cast<int>(diag.size());
    k.data_ = std::move(diag);
    return k;
}

Coefficient Coefficient::matrix(std::vector<double> rowmajor, int dim) {
    if (dim < 1 || rowmajor.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("coefficient: matrix must be dim*dim row-major");
    }
    Coefficient k;
    k.kind_ = Kind::Matrix;
    k.dim_ = dim;
    k.data_ = std::move(rowmajor);
    return k;
}

Coefficient Coefficient::state_dependent(Apply fn) {
    if (!fn) throw std::invalid_argument("coefficient: null state-dependent function");
    Coefficient k;
    k.kind_ = Kind::StateDependent;
    k.fn_ = std::move(fn);
    return k;
}

void Coefficient::apply(std::span<const double> w, std::span<const double> v,
                        std::span<double> out) const {
    if (v.size() != out.size()) {
        throw std::invalid_argument("coefficient: input/output size mismatch");
    }
    switch (kind_) {
    case Kind::Scalar:
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = value_ * v[i];
        return;
    case Kind::Diagonal:
        if (static_cast<int>(v.size()) != dim_) {
            throw std::invalid_argument("coefficient: diagonal size " + std::to_string(dim_) +
                                        " does not match vector size " + std::to_string(v.size()));
        }
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = data_[i] * v[i];
        return;
    case Kind::Matrix: {
        if (static_cast<int>(v.size()) != dim_) {
            throw std::invalid_argument("coefficient: matrix dim " + std::to_string(dim_) +
                                        " does not match vector size " + std::to_string(v.size()));
        }
        const auto d = static_cast<std::size_t>(dim_);
        for (std::size_t r = 0; r < d; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c) s += data_[r * d + c] * v[c];
            out[r] = s;
        }
        return;
    }
    case Kind::StateDependent:
        fn_(w, v, out);
        return;
    }
}

namespace {

void check_grid(double horizon, double step) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("simulate: horizon must be positive");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("simulate: step must be positive");
    }
    if (step > horizon) {
        throw std::invalid_argument("simulate: step must not exceed horizon");
    }
}

std::size_t grid_steps(double horizon, double step) {
    // smallest K with K * step >= horizon (tolerating fp division residue)
    return static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
}

} // namespace

Trajectory simulate_levy(const MultivariateStableSpec& spec, double horizon, double step,
                         RngStream& rng) {
    check_grid(horizon, step);
    const int d = spec.dim();
    const std::size_t steps = grid_steps(horizon, step);

    Trajectory traj;
    traj.dim = d;
    traj.step = step;
    traj.horizon = horizon;
    traj.seed = rng.seed();
    traj.times.reserve(steps + 1);
    traj.points.reserve((steps + 1) * static_cast<std::size_t>(d));

    std::vector<double> w(static_cast<std::size_t>(d), 0.0);
    std::vector<double> xi(static_cast<std::size_t>(d));
    traj.push_back(0.0, w);
    double t = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_next = std::min(static_cast<double>(k) * step, horizon);
        const double dt = t_next - t;
        sample_multivariate(spec, rng, xi);
        for (int i = 0; i < d; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            w[ui] += std::pow(dt, 1.0 / spec.coordinate_alpha(i)) * xi[ui];
            if (!std::isfinite(w[ui])) {
                throw std::runtime_error("simulate_levy: non-finite coordinate " +
                                         std::to_string(i) + " at t = " + std::to_string(t_next));
            }
        }
        traj.push_back(t_next, w);
        t = t_next;
    }
    return traj;
}

Trajectory simulate_sde(const DrivingSpec& driving, std::span<const double> initial,
                        double horizon, double step, RngStream& rng) {
    check_grid(horizon, step);
    if (!(driving.divergence_cap > 0.0)) {
        throw std::invalid_argument("simulate_sde: divergence cap must be positive");
    }
    const int d = driving.stable_law.dim();
    const auto ud = static_cast<std::size_t>(d);
    if (!initial.empty() && initial.size() != ud) {
        throw std::invalid_argument("simulate_sde: initial point dimension mismatch");
    }
    const std::size_t steps = grid_steps(horizon, step);

    Trajectory traj;
    traj.dim = d;
    traj.step = step;
    traj.horizon = horizon;
    traj.seed = rng.seed();
    traj.times.reserve(steps + 1);
    traj.points.reserve((steps + 1) * ud);

    std::vector<double> w(ud, 0.0);
    if (!initial.empty()) w.assign(initial.begin(), initial.end());
    std::vector<double> w_next(ud), grad(ud), noise(ud), applied(ud);
    traj.push_back(0.0, w);
    double t = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_next = std::min(static_cast<double>(k) * step, horizon);
        const double dt = t_next - t;
        w_next = w;

        if (driving.grad && !driving.precond.is_zero()) {
            driving.grad(w, grad);
            driving.precond.apply(w, grad, applied);
            for (std::size_t i = 0; i < ud; ++i) w_next[i] -= dt * applied[i];
        }
        if (!driving.gaussian_coeff.is_zero()) {
            for (double& g : noise) g = rng.gaussian();
            driving.gaussian_coeff.apply(w, noise, applied);
            const double sq = std::sqrt(dt);
            for (std::size_t i = 0; i < ud; ++i) w_next[i] += sq * applied[i];
        }
        if (!driving.stable_coeff.is_zero()) {
            sample_multivariate(driving.stable_law, rng, noise);
            for (int i = 0; i < d; ++i) {
                noise[static_cast<std::size_t>(i)] *=
                    std::pow(dt, 1.0 / driving.stable_law.coordinate_alpha(i));
            }
            driving.stable_coeff.apply(w, noise, applied);
            for (std::size_t i = 0; i < ud; ++i) w_next[i] += applied[i];
        }

        bool diverged = false;
        for (double x : w_next) {
            if (!std::isfinite(x) || std::abs(x) > driving.divergence_cap) {
                diverged = true;
                break;
            }
        }
        if (diverged) {
            traj.truncated = true;
            return traj;
        }
        w = w_next;
        traj.push_back(t_next, w);
        t = t_next;
    }
    return traj;
}

} // namespace levydim
