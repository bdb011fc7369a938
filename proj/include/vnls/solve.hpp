#pragma once

#include <cstdint>
#include <vector>

#include "vnls/energy.hpp"
#include "vnls/grids.hpp"
#include "vnls/problem.hpp"

namespace vnls {

struct SolverOpts {
    int max_iters = 5000;
    double tol = 1e-8;          // Riesz gradient norm at the rescaled critical point
    int path_nodes = 40;        // P: path is P+1 fields
    std::uint64_t seed = 0;
    double perturb = 0.0;       // amplitude of seeded perturbation of the initial guess
};

struct QuotientReport {
    double value = 0.0;                // converged quotient (or saddle level for the path solver)
    RadialGrid grid;                   // discretization the run used (owned copy)
    std::vector<double> minimizer;     // nodal values of the minimizing field
    int iterations = 0;
    double final_gradient_norm = 0.0;
    double t_star = 0.0;               // ray maximizer of J through the minimizer
    double level = 0.0;                // implied critical level (1/2 - 1/p) value^{p/(p-2)}
};

/// Minimize the isotropic quotient (int |grad v|^2 + a int v^2)/(int |v|^p)^{2/p}
/// over nonnegative radial fields. Normalized descent: project to unit p-norm
/// after every step.
QuotientReport ground_state_sp(const ProblemParams& params, const RadialGrid& grid,
                               const SolverOpts& opts);

/// Minimize the full anisotropic quotient ||u||_A^2/(int K_* u^p)^{2/p} over
/// nonnegative radial fields; the rescaled t* u is a discrete critical point
/// of J.
QuotientReport nehari_minimize(const ProblemParams& params, const PotentialPair& pot,
                               const RadialGrid& grid, const SolverOpts& opts);

/// Path-deformation saddle search: discretize a path from 0 to a
/// negative-energy endpoint, repeatedly relocate the maximal-energy interior
/// node along its negative Riesz gradient, and re-tension the path. Returns
/// the converged saddle level; cross-checks the Nehari level.
QuotientReport mountain_pass_path(const ProblemParams& params, const PotentialPair& pot,
                                  const RadialGrid& grid, const SolverOpts& opts);

struct ThresholdReport {
    double lhs = 0.0;           // best anisotropic quotient found
    double S_p = 0.0;
    double S = 0.0;             // (1 - b/2)^{(p-2)/p} S_p
    double rhs = 0.0;           // mu^{-2/p} S
    double ps_threshold = 0.0;  // (1/2 - 1/p) mu^{-2/(p-2)} S^{p/(p-2)}
    double mp_level = 0.0;      // (1/2 - 1/p) lhs^{p/(p-2)}
    bool condition_18_holds = false;
    bool level_below_threshold = false;
    bool degraded = false;      // quotient minimization failed; lhs from trial functions only

    std::vector<double> sweep_radii;
    std::vector<double> sweep_dirichlet_quotient; // int|grad u|^2 / (int K_* |u|^p)^{2/p}
    std::vector<double> sweep_quotient_A;         // full quotient of the same trial

    QuotientReport nehari;
};

/// Existence-condition report: best quotient over annulus trial functions and
/// the quotient minimizer, the derived constants, and both verdicts.
ThresholdReport threshold_check(const ProblemParams& params, const PotentialPair& pot,
                                const RadialGrid& grid, const SolverOpts& opts);

/// Annulus trial function: 1 on [5r/8, 7r/8], cubic-ramped to 0 at r/2 and r.
RadialField annulus_trial(const RadialGrid& grid, double r);

/// Normalized Gaussian initial guess e^{-r^2/2}, optionally perturbed with a
/// seeded uniform jitter.
RadialField initial_guess(const RadialGrid& grid, std::uint64_t seed, double perturb);

} // namespace vnls
