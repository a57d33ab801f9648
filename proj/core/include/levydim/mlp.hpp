// Small fully connected ReLU network with a single logistic output unit and
// exact reverse-mode gradients.  Parameters live in one flat vector, laid
// out layer by layer as [W row-major (out x in), b], which is also the
// grouping used for per-layer tail-index estimation.
#pragma once

#include <span>
#include <vector>

#include "levydim/dataset.hpp"
#include "levydim/objective.hpp"
#include "levydim/rng.hpp"
#include "levydim/tail_index.hpp"

namespace levydim {

class Mlp {
public:
    // widths = {input, hidden..., 1}; at least one hidden layer, output 1.
    explicit Mlp(std::vector<int> widths);

    const std::vector<int>& widths() const { return widths_; }
    int input_dim() const { return widths_.front(); }
    std::size_t param_count() const { return param_count_; }

    // One group per layer, named "layer1".."layerL", weights and biases
    // grouped together.
    GroupMap group_map() const;

    struct Workspace {
        std::vector<double> acts;  // post-activations of layers 1..L
        std::vector<double> delta; // backprop buffers
        std::vector<double> delta_next;
    };
    Workspace make_workspace() const;

    // Returns the output logit; fills the workspace activations.
    double forward(std::span<const double> w, std::span<const double> x, Workspace& ws) const;

    // Logistic loss log(1 + exp(-y logit)).
    double loss(std::span<const double> w, std::span<const double> x, int y, Workspace& ws) const;

    // grad += weight * d loss / d w  (exact backprop; ReLU subgradient 0 at 0)
    void add_loss_grad(std::span<const double> w, std::span<const double> x, int y,
                       double weight, std::span<double> grad, Workspace& ws) const;

    // He-style init: weights ~ N(0, 2 / fan_in), biases 0.
    void random_init(std::span<double> w, RngStream& rng) const;

    // Fraction of samples with sign(logit) == y (logit > 0 predicts +1).
    double accuracy(std::span<const double> w, const Dataset& data, Workspace& ws) const;

private:
    std::vector<int> widths_;
    std::vector<std::size_t> layer_offsets_; // layer_offsets_[l] = start of layer l+1 params
    std::vector<std::size_t> act_offsets_;   // offsets into Workspace::acts for layers 1..L
    std::size_t param_count_ = 0;
};

// Objective adapter; holds a mutable workspace, so clone per thread.
class MlpObjective final : public Objective {
public:
    explicit MlpObjective(const Mlp& mlp) : mlp_(&mlp), ws_(mlp.make_workspace()) {}

    std::size_t param_dim(int feature_dim) const override;
    double loss(std::span<const double> w, std::span<const double> x, int y) const override {
        return mlp_->loss(w, x, y, ws_);
    }
    void add_loss_grad(std::span<const double> w, std::span<const double> x, int y,
                       double weight, std::span<double> grad) const override {
        mlp_->add_loss_grad(w, x, y, weight, grad, ws_);
    }
    std::unique_ptr<Objective> clone() const override {
        return std::make_unique<MlpObjective>(*mlp_);
    }

private:
    const Mlp* mlp_;
    mutable Mlp::Workspace ws_;
};

} // namespace levydim
