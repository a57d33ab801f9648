#include "levydim/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace levydim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCauchyTol = 1e-8;

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 2.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("stable: alpha must lie in (0, 2], got " +
                                    std::to_string(alpha));
    }
}
} // namespace

StableParams::StableParams(double alpha_, double sigma_) : alpha(alpha_), sigma(sigma_) {
    check_alpha(alpha);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("stable: sigma must be positive, got " +
                                    std::to_string(sigma));
    }
}

double sample_sas(const StableParams& params, RngStream& rng) {
    const double alpha = params.alpha;
    const double u = rng.uniform(-kPi / 2.0, kPi / 2.0);
    if (std::abs(alpha - 1.0) <= kCauchyTol) {
        return params.sigma * std::tan(u);
    }
    const double w = rng.exponential();
    // Chambers-Mallows-Stuck, symmetric case:
    //   X = sin(alpha U) / cos(U)^{1/alpha} * (cos((1-alpha) U) / W)^{(1-alpha)/alpha}
    const double x = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
                     std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return params.sigma * x;
}

double sample_positive_stable(double a, RngStream& rng) {
    if (!(a > 0.0) || !(a < 1.0)) {
        throw std::invalid_argument("stable: positive-stable index must lie in (0, 1), got " +
                                    std::to_string(a));
    }
    // Kanter's representation: A = (a(V) / W)^{(1-a)/a} with
    //   a(V) = [sin(a V)]^{a/(1-a)} [sin((1-a) V)] / [sin V]^{1/(1-a)},
    // V ~ U(0, pi), W ~ Exp(1).  The normalization already gives the Laplace
    // transform exp(-g^a) with no extra scale constant.
    const double v = kPi * rng.uniform_open();
    const double w = rng.exponential();
    const double sv = std::sin(v);
    const double ratio = std::pow(std::sin(a * v) / sv, a / (1.0 - a)) *
                         (std::sin((1.0 - a) * v) / sv);
    return std::pow(ratio / w, (1.0 - a) / a);
}

MultivariateStableSpec MultivariateStableSpec::elliptic(int dim, double alpha) {
    if (dim < 1) {
        throw std::invalid_argument("stable: dimension must be >= 1");
    }
    check_alpha(alpha);
    MultivariateStableSpec spec;
    spec.kind_ = Kind::Elliptic;
    spec.dim_ = dim;
    spec.alpha_ = alpha;
    return spec;
}

MultivariateStableSpec MultivariateStableSpec::independent_components(std::vector<double> alphas) {
    if (alphas.empty()) {
        throw std::invalid_argument("stable: need at least one component alpha");
    }
    for (double a : alphas) check_alpha(a);
    MultivariateStableSpec spec;
    spec.kind_ = Kind::IndependentComponents;
    spec.dim_ = static_cast<int>(alphas.size());
    spec.alphas_ = std::move(alphas);
    return spec;
}

double MultivariateStableSpec::elliptic_alpha() const {
    if (kind_ != Kind::Elliptic) {
        throw std::logic_error("stable: elliptic_alpha() on non-elliptic spec");
    }
    return alpha_;
}

const std::vector<double>& MultivariateStableSpec::component_alphas() const {
    if (kind_ != Kind::IndependentComponents) {
        throw std::logic_error("stable: component_alphas() on elliptic spec");
    }
    return alphas_;
}

double MultivariateStableSpec::coordinate_alpha(int i) const {
    if (i < 0 || i >= dim_) {
        throw std::out_of_range("stable: coordinate index out of range");
    }
    return kind_ == Kind::Elliptic ? alpha_ : alphas_[static_cast<std::size_t>(i)];
}

double MultivariateStableSpec::max_alpha() const {
    if (kind_ == Kind::Elliptic) return alpha_;
    double m = 0.0;
    for (double a : alphas_) m = std::max(m, a);
    return m;
}

void sample_multivariate(const MultivariateStableSpec& spec, RngStream& rng,
                         std::span<double> out) {
    if (static_cast<int>(out.size()) != spec.dim()) {
        throw std::invalid_argument("stable: output span size does not match spec dimension");
    }
    if (spec.kind() == MultivariateStableSpec::Kind::Elliptic) {
        const double alpha = spec.elliptic_alpha();
        // X = sqrt(A) * G with G ~ N(0, 2 I); at alpha = 2, A degenerates to 1.
        const double scale = alpha >= 2.0
                                 ? std::numbers::sqrt2
                                 : std::sqrt(2.0 * sample_positive_stable(alpha / 2.0, rng));
        for (double& x : out) x = scale * rng.gaussian();
    } else {
        const auto& alphas = spec.component_alphas();
        for (int i = 0; i < spec.dim(); ++i) {
            out[static_cast<std::size_t>(i)] = sample_sas(StableParams(alphas[static_cast<std::size_t>(i)], 1.0), rng);
        }
    }
}

std::vector<double> sample_multivariate(const MultivariateStableSpec& spec, RngStream& rng) {
    std::vector<double> out(static_cast<std::size_t>(spec.dim()));
    sample_multivariate(spec, rng, out);
    return out;
}

double chf(const StableParams& params, double omega) {
    return std::exp(-std::pow(params.sigma * std::abs(omega), params.alpha));
}

double chf(const MultivariateStableSpec& spec, std::span<const double> omega) {
    if (static_cast<int>(omega.size()) != spec.dim()) {
        throw std::invalid_argument("stable: frequency vector size does not match spec dimension");
    }
    if (spec.kind() == MultivariateStableSpec::Kind::Elliptic) {
        double norm2 = 0.0;
        for (double w : omega) norm2 += w * w;
        return std::exp(-std::pow(std::sqrt(norm2), spec.elliptic_alpha()));
    }
    const auto& alphas = spec.component_alphas();
    double s = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        s += std::pow(std::abs(omega[i]), alphas[i]);
    }
    return std::exp(-s);
}

} // namespace levydim
