// Generalization-bound calculators: plug-in evaluation of the
// dimension-dependent high-probability bounds from user-supplied constants.
#pragma once

namespace levydim {

struct BoundInputs {
    double loss_bound_B = 1.0; // uniform loss bound, > 0
    double lipschitz_L = 1.0;  // Lipschitz constant of the loss in w, > 0
    long long n = 2;           // sample size, >= 2
    double gamma = 0.1;        // confidence level in (0, 1]; 1 drops that term
    double d_H = 0.0;          // (uniform) Hausdorff dimension, >= 0
    double coupling_M = 1.0;   // mixing/coupling constant, >= 1 (second bound)
    double diameter = 0.0;     // hypothesis-set diameter, > 0 (chaining bound)
    double rho_n = 0.0;        // covering growth rho(n), > 0 (chaining bound)
    int ambient_dim = 0;       // optional; when > 0, d_H <= ambient_dim is enforced
};

// B * sqrt( 2 d_H log(n L^2) / n + log(1/gamma) / n ).
// Throws std::invalid_argument on range violations and std::domain_error
// when n L^2 <= 1 (outside the asymptotic regime where the bound is stated).
double theorem1_bound(const BoundInputs& in);

// 2 B * sqrt( (d_H + 1) log^2(n L^2) / n + log(7 M / gamma) / n ).
double theorem2_bound(const BoundInputs& in);

// Chaining variant L * B * diameter * sqrt( d_H rho_n / n + log(1/gamma) / n ),
// stated only up to an absolute constant; returned with c = 1 and the
// placeholder flagged.
struct ChainingBound {
    double value = 0.0;
    double c = 1.0;                 // the absolute constant actually applied
    bool c_is_placeholder = true;   // the source result does not fix c
};
ChainingBound chaining_bound(const BoundInputs& in);

// The "sufficiently large n" threshold of these bounds is not computable;
// as a convention the calculators flag n < 100 as below any plausible
// threshold.  The bound functions themselves stay pure; callers decide how
// to surface the warning.
bool below_asymptotic_threshold(const BoundInputs& in);

} // namespace levydim
