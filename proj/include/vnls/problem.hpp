#pragma once

#include <functional>
#include <vector>

namespace vnls {

using Vec = std::vector<double>;

/// Validated problem data for -Δu + V(x)u = K(x)|u|^{p-2}u with
/// power-law potentials V ~ a|x|^{-b}, K ~ mu|x|^{-s}.
///
/// Derived quantities are stored once at validation time and never
/// recomputed elsewhere:
///   p     = 2(N - 2s/b)/(N - 2)
///   C_b   = (b/4)(1 - b/4)(N - 2)^2
///   kappa = b^2/4 - b,  so that 1 + kappa = (1 - b/2)^2
struct ProblemParams {
    int N = 0;
    double a = 0.0;
    double b = 0.0;
    double s = 0.0;
    double mu = 0.0;
    // derived
    double p = 0.0;
    double C_b = 0.0;
    double kappa = 0.0;
};

ProblemParams validate_params(int N, double a, double b, double s, double mu);

enum class PotentialKind { model, custom };

/// Radial evaluators for V and K. For kind==model these are exactly
/// a/(1+r)^b and mu/(1+r)^s. Custom potentials carry caller-claimed decay
/// limits (lim r^b V, lim r^s K) used for diagnostics only.
struct PotentialPair {
    std::function<double(double)> V;
    std::function<double(double)> K;
    PotentialKind kind = PotentialKind::model;
    double v_limit = 0.0; // claimed lim r^b V(r)
    double k_limit = 0.0; // claimed lim r^s K(r)
};

PotentialPair model_potentials(const ProblemParams& params);

PotentialPair custom_potentials(std::function<double(double)> V, std::function<double(double)> K,
                                double v_limit, double k_limit);

/// Transformed potential V_*(rho) = rho^{2b/(2-b)} V(rho^{2/(2-b)}) + C_b rho^{-2}.
/// Singular at rho = 0; rejects rho <= 0.
double v_star(const ProblemParams& params, const PotentialPair& pot, double rho);

/// Transformed weight K_*(rho) = rho^{2s/(2-b)} K(rho^{2/(2-b)}).
/// For 0 < b < 2 the continuous extension K_*(0) = 0 is returned;
/// for b < 0 the weight blows up at the origin and rho <= 0 is an error.
double k_star(const ProblemParams& params, const PotentialPair& pot, double rho);

/// Apply the anisotropic matrix A(y) = I + kappa * y y^T / |y|^2 to g.
Vec anisotropy_apply(double kappa, const Vec& y, const Vec& g);

/// Apply B(theta) = I + kappa * theta theta^T for unit theta.
Vec b_theta_apply(double kappa, const Vec& theta, const Vec& g);

} // namespace vnls
