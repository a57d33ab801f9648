#include "levydim/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levydim {

Mlp::Mlp(std::vector<int> widths) : widths_(std::move(widths)) {
    if (widths_.size() < 3) {
        throw std::invalid_argument("mlp: need at least one hidden layer (widths = {in, hidden..., 1})");
    }
    if (widths_.back() != 1) {
        throw std::invalid_argument("mlp: output width must be 1 (single logit)");
    }
    for (int wth : widths_) {
        if (wth < 1) throw std::invalid_argument("mlp: layer widths must be >= 1");
    }
    layer_offsets_.push_back(0);
    std::size_t acts = 0;
    for (std::size_t l = 1; l < widths_.size(); ++l) {
        const auto in = static_cast<std::size_t>(widths_[l - 1]);
        const auto out = static_cast<std::size_t>(widths_[l]);
        layer_offsets_.push_back(layer_offsets_.back() + out * in + out);
        act_offsets_.push_back(acts);
        acts += out;
    }
    param_count_ = layer_offsets_.back();
}

GroupMap Mlp::group_map() const {
    GroupMap gm;
    gm.assignment.resize(param_count_);
    for (std::size_t l = 0; l + 1 < layer_offsets_.size(); ++l) {
        gm.names.push_back("layer" + std::to_string(l + 1));
        std::fill(gm.assignment.begin() + static_cast<std::ptrdiff_t>(layer_offsets_[l]),
                  gm.assignment.begin() + static_cast<std::ptrdiff_t>(layer_offsets_[l + 1]),
                  static_cast<int>(l));
    }
    return gm;
}

Mlp::Workspace Mlp::make_workspace() const {
    Workspace ws;
    std::size_t acts = 0;
    int max_width = 0;
    for (std::size_t l = 1; l < widths_.size(); ++l) {
        acts += static_cast<std::size_t>(widths_[l]);
        max_width = std::max(max_width, widths_[l]);
    }
    ws.acts.resize(acts);
    ws.delta.resize(static_cast<std::size_t>(max_width));
    ws.delta_next.resize(static_cast<std::size_t>(max_width));
    return ws;
}

double Mlp::forward(std::span<const double> w, std::span<const double> x, Workspace& ws) const {
    if (w.size() != param_count_) throw std::invalid_argument("mlp: parameter size mismatch");
    if (static_cast<int>(x.size()) != input_dim()) {
        throw std::invalid_argument("mlp: input size mismatch");
    }
    const std::size_t layers = widths_.size() - 1;
    const double* a_prev = x.data();
    for (std::size_t l = 0; l < layers; ++l) {
        const auto in = static_cast<std::size_t>(widths_[l]);
        const auto out = static_cast<std::size_t>(widths_[l + 1]);
        const double* weight = w.data() + layer_offsets_[l];
        const double* bias = weight + out * in;
        double* act = ws.acts.data() + act_offsets_[l];
        const bool hidden = l + 1 < layers;
        for (std::size_t j = 0; j < out; ++j) {
            double z = bias[j];
            const double* row = weight + j * in;
            for (std::size_t i = 0; i < in; ++i) z += row[i] * a_prev[i];
            act[j] = hidden ? std::max(0.0, z) : z;
        }
        a_prev = act;
    }
    return a_prev[0];
}

double Mlp::loss(std::span<const double> w, std::span<const double> x, int y,
                 Workspace& ws) const {
    return logistic_loss_from_margin(y * forward(w, x, ws));
}

void Mlp::add_loss_grad(std::span<const double> w, std::span<const double> x, int y,
                        double weight, std::span<double> grad, Workspace& ws) const {
    if (grad.size() != param_count_) throw std::invalid_argument("mlp: gradient size mismatch");
    const double logit = forward(w, x, ws);
    const double m = y * logit;
    // d loss / d logit = -y * sigmoid(-m)
    ws.delta[0] = weight * (-y / (1.0 + std::exp(m)));

    const std::size_t layers = widths_.size() - 1;
    for (std::size_t l = layers; l-- > 0;) {
        const auto in = static_cast<std::size_t>(widths_[l]);
        const auto out = static_cast<std::size_t>(widths_[l + 1]);
        const double* weight_l = w.data() + layer_offsets_[l];
        const double* a_prev = l == 0 ? x.data() : ws.acts.data() + act_offsets_[l - 1];
        double* gw = grad.data() + layer_offsets_[l];
        double* gb = gw + out * in;
        for (std::size_t j = 0; j < out; ++j) {
            const double dj = ws.delta[j];
            double* grow = gw + j * in;
            for (std::size_t i = 0; i < in; ++i) grow[i] += dj * a_prev[i];
            gb[j] += dj;
        }
        if (l == 0) break;
        // delta_{l} = W^T delta_{l+1}, gated by ReLU activity of layer l
        for (std::size_t i = 0; i < in; ++i) {
            if (a_prev[i] <= 0.0) {
                ws.delta_next[i] = 0.0;
                continue;
            }
            double s = 0.0;
            for (std::size_t j = 0; j < out; ++j) s += weight_l[j * in + i] * ws.delta[j];
            ws.delta_next[i] = s;
        }
        std::swap(ws.delta, ws.delta_next);
    }
}

void Mlp::random_init(std::span<double> w, RngStream& rng) const {
    if (w.size() != param_count_) throw std::invalid_argument("mlp: parameter size mismatch");
    for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
        const auto in = static_cast<std::size_t>(widths_[l]);
        const auto out = static_cast<std::size_t>(widths_[l + 1]);
        const double scale = std::sqrt(2.0 / static_cast<double>(in));
        double* weight = w.data() + layer_offsets_[l];
        for (std::size_t i = 0; i < out * in; ++i) weight[i] = scale * rng.gaussian();
        double* bias = weight + out * in;
        for (std::size_t j = 0; j < out; ++j) bias[j] = 0.0;
    }
}

double Mlp::accuracy(std::span<const double> w, const Dataset& data, Workspace& ws) const {
    if (data.size() == 0) throw std::invalid_argument("mlp: empty dataset");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double logit = forward(w, data.row(i), ws);
        const int pred = logit > 0.0 ? 1 : -1;
        if (pred == data.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::size_t MlpObjective::param_dim(int feature_dim) const {
    if (feature_dim != mlp_->input_dim()) {
        throw std::invalid_argument("mlp: dataset feature dimension does not match input width");
    }
    return mlp_->param_count();
}

} // namespace levydim
