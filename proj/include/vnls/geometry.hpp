#pragma once

#include <functional>
#include <vector>

#include "vnls/problem.hpp"

namespace vnls {

/// Parameters of the change of variables y = |x|^{-b/2} x.
struct TransformSpec {
    double b = 0.0;
    int N = 0;
};

TransformSpec make_transform(const ProblemParams& params);

/// A smooth scalar field with caller-supplied exact derivatives, used as a
/// test function for the pointwise operator identity.
struct AnalyticField {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<std::vector<Vec>(const Vec&)> hessian;
};

/// y = |x|^{-b/2} x. Rejects the origin.
Vec forward_map(const TransformSpec& spec, const Vec& x);

/// x = |y|^{b/(2-b)} y. Rejects the origin.
Vec inverse_map(const TransformSpec& spec, const Vec& y);

/// u(x) = |x|^{-b(N-2)/4} v(|x|^{-b/2} x).
double pull_field(const TransformSpec& spec, const AnalyticField& v, const Vec& x);

/// Density of dx against dy: (2/(2-b)) |y|^{bN/(2-b)}.
double jacobian_factor(const TransformSpec& spec, const Vec& y);

struct OperatorResidualOptions {
    double h_rel = 1e-3; // finite-difference step as a fraction of |x|
};

/// Pointwise residual of the transformed-operator identity: |Δ_x u - F(v,y)|
/// where Δ_x u is a second-order central-difference Laplacian of pull_field
/// and F expands the divergence form of the anisotropic operator using the
/// analytic derivatives of v. Residuals are O(h^2) for smooth v.
std::vector<double> operator_identity_residual(const TransformSpec& spec, const ProblemParams& params,
                                     const AnalyticField& v, const std::vector<Vec>& x_samples,
                                     const OperatorResidualOptions& opts = {});

// Ready-made analytic test fields.
AnalyticField gaussian_field();            // e^{-|y|^2}
AnalyticField r2_gaussian_field();         // |y|^2 e^{-|y|^2}
AnalyticField y1_gaussian_field();         // y_1 e^{-|y|^2} (non-radial)
AnalyticField constant_field(double c);
AnalyticField ball_indicator_field(double R);   // value only, for quadrature checks
AnalyticField annulus_bump_field(double r);     // smooth bump supported in (r/2, r)

// Radial profile of the annulus bump and its derivative, shared with the
// trial-function sweep in the solver.
double annulus_bump_profile(double r, double rho);
double annulus_bump_derivative(double r, double rho);

} // namespace vnls
