#include "levydim/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace levydim {

namespace {

void validate_common(const BoundInputs& in) {
    if (!(in.loss_bound_B > 0.0)) throw std::invalid_argument("bounds: B must be > 0");
    if (!(in.lipschitz_L > 0.0)) throw std::invalid_argument("bounds: L must be > 0");
    if (in.n < 2) throw std::invalid_argument("bounds: n must be >= 2");
    if (!(in.gamma > 0.0) || in.gamma > 1.0) {
        throw std::invalid_argument("bounds: gamma must lie in (0, 1]");
    }
    if (!(in.d_H >= 0.0)) throw std::invalid_argument("bounds: d_H must be >= 0");
    if (in.ambient_dim > 0 && in.d_H > static_cast<double>(in.ambient_dim)) {
        throw std::invalid_argument("bounds: d_H exceeds the ambient dimension");
    }
    const double nl2 = static_cast<double>(in.n) * in.lipschitz_L * in.lipschitz_L;
    if (nl2 <= 1.0) {
        throw std::domain_error("bounds: n L^2 <= 1 is outside the stated regime (log nonpositive)");
    }
}

} // namespace

bool below_asymptotic_threshold(const BoundInputs& in) { return in.n < 100; }

double theorem1_bound(const BoundInputs& in) {
    validate_common(in);
    const double n = static_cast<double>(in.n);
    const double log_nl2 = std::log(n * in.lipschitz_L * in.lipschitz_L);
    const double radicand = 2.0 * in.d_H * log_nl2 / n + std::log(1.0 / in.gamma) / n;
    return in.loss_bound_B * std::sqrt(radicand);
}

double theorem2_bound(const BoundInputs& in) {
    validate_common(in);
    if (!(in.coupling_M >= 1.0)) throw std::invalid_argument("bounds: M must be >= 1");
    const double n = static_cast<double>(in.n);
    const double log_nl2 = std::log(n * in.lipschitz_L * in.lipschitz_L);
    const double radicand = (in.d_H + 1.0) * log_nl2 * log_nl2 / n +
                            std::log(7.0 * in.coupling_M / in.gamma) / n;
    return 2.0 * in.loss_bound_B * std::sqrt(radicand);
}

ChainingBound chaining_bound(const BoundInputs& in) {
    validate_common(in);
    if (!(in.diameter > 0.0)) throw std::invalid_argument("bounds: diameter must be > 0");
    if (!(in.rho_n > 0.0)) throw std::invalid_argument("bounds: rho_n must be > 0");
    const double n = static_cast<double>(in.n);
    const double radicand = in.d_H * in.rho_n / n + std::log(1.0 / in.gamma) / n;
    ChainingBound out;
    out.value = in.lipschitz_L * in.loss_bound_B * in.diameter * std::sqrt(radicand);
    return out;
}

} // namespace levydim
