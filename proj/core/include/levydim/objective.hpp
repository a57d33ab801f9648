// Pointwise training objectives over (features, label) samples, plus the
// numerically safe logistic-loss primitives used in the hot risk loops.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>

namespace levydim {

// log(1 + exp(t)) without overflow for any finite t.
inline double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Logistic loss log(1 + exp(-y w.x)) given the margin y * w.x.
inline double logistic_loss_from_margin(double margin) { return softplus(-margin); }

inline double logistic_loss(std::span<const double> w, std::span<const double> x, int y) {
    return logistic_loss_from_margin(y * dot(w, x));
}

// grad += weight * d/dw log(1 + exp(-y w.x)) = weight * (-y sigmoid(-y w.x)) x.
inline void logistic_add_grad(std::span<const double> w, std::span<const double> x, int y,
                              double weight, std::span<double> grad) {
    const double m = y * dot(w, x);
    const double s = 1.0 / (1.0 + std::exp(m)); // sigmoid(-m); exp overflow -> s = 0
    const double c = -y * s * weight;
    for (std::size_t i = 0; i < x.size(); ++i) grad[i] += c * x[i];
}

// A per-sample loss family f^{(i)}(w) = loss(w, x_i, y_i).  Instances may
// hold scratch buffers (the MLP does), so one instance must not be shared
// across threads; use clone() for worker-local copies.
class Objective {
public:
    virtual ~Objective() = default;

    // Parameter dimension for a dataset with the given feature dimension.
    virtual std::size_t param_dim(int feature_dim) const = 0;

    virtual double loss(std::span<const double> w, std::span<const double> x, int y) const = 0;

    // grad += weight * d loss / d w
    virtual void add_loss_grad(std::span<const double> w, std::span<const double> x, int y,
                               double weight, std::span<double> grad) const = 0;

    virtual std::unique_ptr<Objective> clone() const = 0;
};

// Linear logistic regression: loss(w, x, y) = log(1 + exp(-y x.w)).
class LogisticObjective final : public Objective {
public:
    std::size_t param_dim(int feature_dim) const override {
        return static_cast<std::size_t>(feature_dim);
    }
    double loss(std::span<const double> w, std::span<const double> x, int y) const override {
        return logistic_loss(w, x, y);
    }
    void add_loss_grad(std::span<const double> w, std::span<const double> x, int y,
                       double weight, std::span<double> grad) const override {
        logistic_add_grad(w, x, y, weight, grad);
    }
    std::unique_ptr<Objective> clone() const override {
        return std::make_unique<LogisticObjective>();
    }
};

// Caps a base loss at a fixed bound: loss' = min(loss, cap).  Risk gaps under
// heavy-tailed iterates are only informative for bounded losses (an unbounded
// loss lets a single extreme iterate dominate every statistic), so the gap
// experiments evaluate a capped loss by default.  The gradient is zero
// wherever the cap is active.
class CappedObjective final : public Objective {
public:
    CappedObjective(const Objective& base, double cap) : base_(base.clone()), cap_(cap) {
        if (!std::isfinite(cap) || cap <= 0.0) {
            throw std::invalid_argument("CappedObjective: cap must be positive and finite");
        }
    }
    std::size_t param_dim(int feature_dim) const override { return base_->param_dim(feature_dim); }
    double loss(std::span<const double> w, std::span<const double> x, int y) const override {
        return std::min(base_->loss(w, x, y), cap_);
    }
    void add_loss_grad(std::span<const double> w, std::span<const double> x, int y,
                       double weight, std::span<double> grad) const override {
        if (base_->loss(w, x, y) < cap_) base_->add_loss_grad(w, x, y, weight, grad);
    }
    std::unique_ptr<Objective> clone() const override {
        return std::make_unique<CappedObjective>(*base_, cap_);
    }
    double cap() const { return cap_; }

private:
    std::unique_ptr<Objective> base_;
    double cap_;
};

// f^{(i)}(w) = 0.5 ||w - x_i||^2; labels are ignored.  Gradient descent on it
// has the closed-form fixed point mean(x_i), which makes it the canonical
// smoke test for the SGD loop.
class QuadraticObjective final : public Objective {
public:
    std::size_t param_dim(int feature_dim) const override {
        return static_cast<std::size_t>(feature_dim);
    }
    double loss(std::span<const double> w, std::span<const double> x, int) const override {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double d = w[i] - x[i];
            s += d * d;
        }
        return 0.5 * s;
    }
    void add_loss_grad(std::span<const double> w, std::span<const double> x, int,
                       double weight, std::span<double> grad) const override {
        for (std::size_t i = 0; i < w.size(); ++i) grad[i] += weight * (w[i] - x[i]);
    }
    std::unique_ptr<Objective> clone() const override {
        return std::make_unique<QuadraticObjective>();
    }
};

} // namespace levydim
