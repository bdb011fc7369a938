#pragma once

#include "vnls/grids.hpp"
#include "vnls/problem.hpp"

namespace vnls {

/// Itemized quadratic form and functional value:
///   total_norm_sq = dirichlet + aniso + potential
///   J_value       = total_norm_sq / 2 - nonlinear / p
struct EnergyBreakdown {
    double dirichlet = 0.0;  // int |grad u|^2
    double aniso = 0.0;      // kappa int |x.grad u|^2/|x|^2  (or theta variant)
    double potential = 0.0;  // int V_* u^2  (or a int u^2)
    double nonlinear = 0.0;  // int K_* (u+)^p  (or mu int (u+)^p)
    double total_norm_sq = 0.0;
    double J_value = 0.0;
};

/// Which p-th power enters a weighted integral: the positive part (as in
/// the functional) or the absolute value (as in the quotients).
enum class PPower { positive_part, absolute };

/// || u ||_A^2 with its breakdown, for radial u. Uses the radial identity
/// |x.grad u|^2/|x|^2 = u'(r)^2, so dirichlet + aniso = (1-b/2)^2 int u'^2 dV.
EnergyBreakdown norm_A_sq(const ProblemParams& params, const PotentialPair& pot,
                          const RadialField& u);

/// || u ||_theta^2 on a tensor grid: aniso = kappa int |theta.grad u|^2,
/// potential = a int u^2.
EnergyBreakdown norm_theta_sq(const ProblemParams& params, const TensorField& u, const Vec& theta);

/// omega int W(r) |u|^p-or-(u+)^p r^{N-1} dr with W = K_* (use_kstar) or mu.
double weighted_p_integral(const ProblemParams& params, const PotentialPair& pot,
                           const RadialField& u, bool use_kstar,
                           PPower power = PPower::positive_part);

double J_value(const ProblemParams& params, const PotentialPair& pot, const RadialField& u);

double J_theta_value(const ProblemParams& params, const TensorField& u, const Vec& theta);

/// Riesz representative of J'(u) in the grid-weighted L^2 pairing:
/// sum_i g_i h_i w_i equals the directional derivative of J along h.
RadialField J_gradient(const ProblemParams& params, const PotentialPair& pot, const RadialField& u);

/// Full anisotropic quotient ||u||_A^2 / (int K_* |u|^p)^{2/p}.
double quotient_A(const ProblemParams& params, const PotentialPair& pot, const RadialField& u);

/// Isotropic quotient (int |grad u|^2 + a int u^2) / (int |u|^p)^{2/p}.
double quotient_p(const ProblemParams& params, const RadialField& u);

struct RayMax {
    double t_star = 0.0;
    double level = 0.0;
};

/// Closed-form maximum of t^2 A/2 - t^p B/p over t >= 0:
/// t* = (A/B)^{1/(p-2)}, level = (1/2 - 1/p) (A / B^{2/p})^{p/(p-2)}.
RayMax ray_max(double norm_sq, double p_integral, double p);

// Low-level helpers shared with the solver: quadratic-form pieces of the
// radial weak form and the transpose-stencil application used to assemble
// Riesz gradients.
std::vector<double> derivative_transpose_times(const RadialGrid& grid,
                                               const std::vector<double>& z);

/// Row i of the derivative stencil matrix D (three columns, possibly
/// one-sided at the ends), exposed so solvers can assemble D^T W D in
/// banded form.
struct DerivRow {
    std::size_t col[3];
    double coef[3];
};
DerivRow derivative_stencil_row(const RadialGrid& grid, std::size_t i);

/// P1 Dirichlet form int u'^2 dV assembled on segment midpoints:
/// sum_i omega ((r_i+r_{i+1})/2)^{N-1} (u_{i+1}-u_i)^2 / h_i.
/// Unlike the nodal central difference, this form has no checkerboard
/// null mode, so it is the form the energy and the solvers share.
double dirichlet_form(const RadialGrid& grid, const std::vector<double>& u);

/// The tridiagonal stiffness operator K of dirichlet_form: u^T K u equals
/// dirichlet_form(grid, u); K u / w is its Riesz representative.
std::vector<double> dirichlet_apply(const RadialGrid& grid, const std::vector<double>& u);

} // namespace vnls
