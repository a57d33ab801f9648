// Discretized heavy-tailed processes: alpha-stable Levy motion and
// Euler-Maruyama schemes for SDEs driven by Brownian and/or stable noise.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "levydim/rng.hpp"
#include "levydim/stable.hpp"
#include "levydim/trajectory.hpp"

namespace levydim {

// Gradient field w -> grad f(w); fills `grad`, does not accumulate.
using GradField = std::function<void(std::span<const double> w, std::span<double> grad)>;

// Diffusion / preconditioner coefficient C(w) applied as v -> C(w) v.
class Coefficient {
public:
    static Coefficient scalar(double c);
    static Coefficient diagonal(std::vector<double> diag);
    static Coefficient matrix(std::vector<double> rowmajor, int dim);
    using Apply = std::function<void(std::span<const double> w, std::span<const double> v,
                                     std::span<double> out)>;
    static Coefficient state_dependent(Apply fn);

    // out = C(w) v; the scalar/diagonal/matrix kinds ignore w.
    void apply(std::span<const double> w, std::span<const double> v,
               std::span<double> out) const;

    // True only for the literal scalar 0 coefficient; lets the integrator
    // skip drawing noise that would be multiplied away.
    bool is_zero() const { return kind_ == Kind::Scalar && value_ == 0.0; }

private:
    enum class Kind { Scalar, Diagonal, Matrix, StateDependent };
    Kind kind_ = Kind::Scalar;
    double value_ = 0.0;
    std::vector<double> data_;
    int dim_ = 0;
    Apply fn_;
};

// Everything that drives the SDE
//   dw = -Sigma0(w) grad f(w) dt + Sigma1(w) dB_t + Sigma2(w) dL_t
// where L is the stable motion described by `stable_law` (whose dimension
// fixes the parameter dimension d).
struct DrivingSpec {
    GradField grad;                                        // grad f; empty = zero drift
    Coefficient precond = Coefficient::scalar(1.0);        // Sigma0
    Coefficient gaussian_coeff = Coefficient::scalar(0.0); // Sigma1
    Coefficient stable_coeff = Coefficient::scalar(1.0);   // Sigma2
    MultivariateStableSpec stable_law = MultivariateStableSpec::elliptic(1, 2.0);
    double divergence_cap = 1e12; // |w_i| beyond this truncates the run
};

// Exact-in-distribution simulation of the Levy motion associated with
// `spec` on the grid t_k = min(k * step, horizon), starting at the origin:
//   W_{k+1} = W_k + dt^{1/alpha_i} xi_i   (coordinate-wise exponents)
// where xi is one draw from `spec`.  With the elliptic spec at alpha = 2
// this is sqrt(2) times standard Brownian motion.
// Throws std::runtime_error if an increment is non-finite.
Trajectory simulate_levy(const MultivariateStableSpec& spec, double horizon, double step,
                         RngStream& rng);

// One Euler-Maruyama pass:
//   w_{k+1} = w_k - dt Sigma0 grad f + sqrt(dt) Sigma1 g + Sigma2 (dt^{1/alpha} o xi)
// with g ~ N(0, I_d), xi one draw from the stable law, and dt^{1/alpha_i}
// applied to xi coordinate-wise before Sigma2.  Per step the Gaussian draw
// happens before the stable draw; a draw is skipped entirely when its
// coefficient is the literal zero.  If any updated coordinate is non-finite
// or exceeds divergence_cap in magnitude, the offending point is dropped and
// the trajectory is returned truncated at the last valid point.
// `initial` empty means the origin.
Trajectory simulate_sde(const DrivingSpec& driving, std::span<const double> initial,
                        double horizon, double step, RngStream& rng);

} // namespace levydim
