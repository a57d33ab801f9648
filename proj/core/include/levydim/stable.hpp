// Symmetric alpha-stable sampling and characteristic functions.
//
// Conventions:
//   * univariate SaS(alpha, sigma): chf  E exp(i w X) = exp(-|sigma w|^alpha).
//     At alpha = 2 this is N(0, 2 sigma^2), NOT the unit normal.
//   * elliptic multivariate: chf exp(-||w||^alpha), built as sqrt(A) * G with
//     G ~ N(0, 2 I_d) and A positive (alpha/2)-stable with Laplace transform
//     E exp(-g A) = exp(-g^{alpha/2}).
//   * independent components: coordinate i is SaS(alpha_i, 1), so the joint
//     chf is exp(-sum_i |w_i|^{alpha_i}).
#pragma once

#include <span>
#include <vector>

#include "levydim/rng.hpp"

namespace levydim {

struct StableParams {
    double alpha; // stability index, in (0, 2]
    double sigma; // scale, > 0

    StableParams(double alpha_, double sigma_);
};

// One draw from SaS(alpha, sigma) via the Chambers-Mallows-Stuck transform.
// Arguments within 1e-8 of alpha = 1 are routed to the exact Cauchy branch
// sigma * tan(U); the generic branch is numerically unstable there.
double sample_sas(const StableParams& params, RngStream& rng);

// One draw from the positive a-stable law with Laplace transform
// E exp(-g A) = exp(-g^a), a in (0, 1), via Kanter's representation.
// Output is strictly positive.
double sample_positive_stable(double a, RngStream& rng);

class MultivariateStableSpec {
public:
    enum class Kind { Elliptic, IndependentComponents };

    // Elliptically contoured SaS in dimension dim: chf exp(-||w||^alpha).
    static MultivariateStableSpec elliptic(int dim, double alpha);

    // Independent SaS(alpha_i, 1) coordinates.
    static MultivariateStableSpec independent_components(std::vector<double> alphas);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    // Elliptic only.
    double elliptic_alpha() const;
    // IndependentComponents only.
    const std::vector<double>& component_alphas() const;

    // Tail index of coordinate i (the shared alpha in the elliptic case).
    double coordinate_alpha(int i) const;
    double max_alpha() const;

private:
    MultivariateStableSpec() = default;
    Kind kind_ = Kind::Elliptic;
    int dim_ = 0;
    double alpha_ = 2.0;
    std::vector<double> alphas_;
};

// One multivariate draw; `out.size()` must equal `spec.dim()`.
void sample_multivariate(const MultivariateStableSpec& spec, RngStream& rng,
                         std::span<double> out);

std::vector<double> sample_multivariate(const MultivariateStableSpec& spec, RngStream& rng);

// Characteristic functions (real-valued by symmetry).
double chf(const StableParams& params, double omega);
double chf(const MultivariateStableSpec& spec, std::span<const double> omega);

} // namespace levydim
