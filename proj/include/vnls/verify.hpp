#pragma once

#include <array>
#include <string>
#include <vector>

#include "vnls/geometry.hpp"
#include "vnls/grids.hpp"
#include "vnls/problem.hpp"
#include "vnls/solve.hpp"

namespace vnls {

/// One audited identity: what was measured, what it was compared against,
/// and whether the stated comparison holds.
struct CheckRecord {
    std::string name;
    std::string anchor; // short identifier of the audited identity
    double measured = 0.0;
    double bound_or_target = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string details;
};

/// Signed axis permutation of the lattice: new axis d reads old axis
/// src[d], with orientation sign[d] in {-1, +1}.
struct SignedPerm {
    std::array<int, 3> src{0, 1, 2};
    std::array<int, 3> sign{1, 1, 1};
};

/// Directional Hardy inequality on radial probes:
/// int u'^2 dV >= ((N-2)^2/4) int u^2/r^2 dV, margin >= -1e-8 * LHS.
CheckRecord hardy_check(const RadialGrid& grid, const std::vector<RadialField>& fields);

/// Near-extremal Hardy probe r^{-(N-2)/2+eps} x log-wide bump: the ratio
/// LHS/RHS must stay >= 1 while dropping below 1.3.
CheckRecord hardy_sharpness_check(int N);

/// Double-loop assembly of the A_ij quadratic form against the split
/// |grad u|^2 + kappa |x.grad u|^2/|x|^2 form on identical nodes.
CheckRecord quadratic_form_identity_check(const ProblemParams& params, const TensorField& u);

/// Pointwise transformed-operator identity: residual magnitude and h^2
/// refinement slope.
CheckRecord operator_identity_check(const ProblemParams& params, const AnalyticField& v,
                          const std::vector<Vec>& samples, const std::string& label);

/// Change-of-variables measure identity for one radial integrand.
CheckRecord measure_check(const ProblemParams& params, const AnalyticField& integrand,
                          const std::string& label, double rel_tol);

/// Lattice-symmetry invariance of the theta-norm quotient.
CheckRecord theta_invariance_check(const ProblemParams& params, const TensorField& u,
                                   const Vec& theta, const SignedPerm& perm);

struct ScalingLawOptions {
    // Base half-width of the cubic lattice; the check enlarges it by the
    // stretch factor when that exceeds 1 so the deformed profile stays inside.
    double L = 8.0;
    std::size_t n = 128;
};

/// Stretched ground-state quotient against the anisotropy factor
/// (1-b/2)^{(p-2)/p} S_p, on a tensor grid with chain-rule gradients.
CheckRecord scaling_law_check(const ProblemParams& params, const RadialGrid& grid,
                              const SolverOpts& opts, const ScalingLawOptions& sl = {});

/// Exact-rearrangement version of the same law: theta-form sums over the
/// lattice against iso-form sums over the stretched lattice, identical to
/// roundoff.
CheckRecord scaling_law_algebra_check(const ProblemParams& params, const RadialGrid& grid,
                                      const SolverOpts& opts, const ScalingLawOptions& sl = {});

/// Weak-form residual of the mapped solution in original coordinates,
/// calibrated against the transformed-side residual of the same pairing.
CheckRecord weak_equivalence_check(const ProblemParams& params, const PotentialPair& pot,
                                   const RadialField& v_solution,
                                   const std::vector<AnalyticField>& test_profiles);

/// Critical-level lower bound (1/2 - 1/p) mu^{-2/(p-2)} S^{p/(p-2)}.
CheckRecord level_lower_bound_check(const ProblemParams& params, double level, double S);

/// Riesz gradient of J against central finite differences of J in random
/// directions.
CheckRecord gradient_consistency_check(const ProblemParams& params, const PotentialPair& pot,
                                       const RadialGrid& grid, std::uint64_t seed);

/// Probe fields for the Hardy and norm-equivalence checks: Gaussians,
/// annulus bumps, and tapered random piecewise-linear fields (fixed seed).
std::vector<RadialField> make_probe_fields(const RadialGrid& grid, std::size_t count,
                                           std::uint64_t seed);

/// Sample points with 0.5 <= |x| <= 2 for the pointwise operator check.
std::vector<Vec> make_sample_points(int N, std::size_t count, std::uint64_t seed);

struct SuiteOptions {
    std::size_t tensor_n = 32;
    double tensor_L = 8.0;
    SolverOpts solver;
    ScalingLawOptions scaling;
    std::uint64_t seed = 0x5EED;
};

/// The full audit. Every record is reproducible bit-for-bit under a fixed
/// seed and grid.
std::vector<CheckRecord> run_verify_suite(const ProblemParams& params, const PotentialPair& pot,
                                          const RadialGrid& grid, const SuiteOptions& opts);

/// Audit subset exercising only the coordinate-transform identities.
std::vector<CheckRecord> run_transform_checks(const ProblemParams& params,
                                              const SuiteOptions& opts);

/// CSV report: name,anchor,measured,target,tolerance,passed.
void write_check_csv(const std::string& path, const std::vector<CheckRecord>& records);

} // namespace vnls
