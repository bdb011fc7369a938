#include "vnls/energy.hpp"

#include <cmath>

#include "vnls/errors.hpp"
#include "vnls/reduce.hpp"

namespace vnls {

namespace {

void require_finite(const std::vector<double>& vals, const char* who) {
    for (double v : vals) {
        if (!std::isfinite(v)) throw NonFiniteError(std::string(who) + ": field contains NaN/Inf");
    }
}

// Stencil row of the derivative operator used by radial_derivative.
struct StencilRow {
    std::size_t col[3];
    double coef[3];
};

StencilRow derivative_row(const RadialGrid& g, std::size_t i) {
    const auto& r = g.r;
    const std::size_t M = g.size();
    if (i == 0) {
        const double h1 = r[1] - r[0], h2 = r[2] - r[1];
        return {{0, 1, 2},
                {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2),
                 -h1 / (h2 * (h1 + h2))}};
    }
    if (i == M - 1) {
        const double h1 = r[M - 2] - r[M - 3], h2 = r[M - 1] - r[M - 2];
        return {{M - 3, M - 2, M - 1},
                {h2 / (h1 * (h1 + h2)), -(h1 + h2) / (h1 * h2),
                 (h1 + 2.0 * h2) / (h2 * (h1 + h2))}};
    }
    const double h1 = r[i] - r[i - 1], h2 = r[i + 1] - r[i];
    return {{i - 1, i, i + 1},
            {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))}};
}

} // namespace

DerivRow derivative_stencil_row(const RadialGrid& grid, std::size_t i) {
    const StencilRow row = derivative_row(grid, i);
    DerivRow out;
    for (int k = 0; k < 3; ++k) {
        out.col[k] = row.col[k];
        out.coef[k] = row.coef[k];
    }
    return out;
}

std::vector<double> derivative_transpose_times(const RadialGrid& grid,
                                               const std::vector<double>& z) {
    if (z.size() != grid.size()) throw GridError("derivative_transpose_times: length mismatch");
    std::vector<double> out(z.size(), 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const StencilRow row = derivative_row(grid, i);
        for (int k = 0; k < 3; ++k) out[row.col[k]] += row.coef[k] * z[i];
    }
    return out;
}

double dirichlet_form(const RadialGrid& grid, const std::vector<double>& u) {
    if (u.size() != grid.size()) throw GridError("dirichlet_form: length mismatch");
    const auto& r = grid.r;
    return chunked_sum(grid.size() - 1, [&](std::size_t i) {
        const double h = r[i + 1] - r[i];
        const double rm = 0.5 * (r[i] + r[i + 1]);
        const double d = u[i + 1] - u[i];
        return grid.omega * std::pow(rm, grid.N - 1) * d * d / h;
    });
}

std::vector<double> dirichlet_apply(const RadialGrid& grid, const std::vector<double>& u) {
    if (u.size() != grid.size()) throw GridError("dirichlet_apply: length mismatch");
    const auto& r = grid.r;
    const std::size_t M = grid.size();
    std::vector<double> out(M, 0.0);
    for (std::size_t i = 0; i + 1 < M; ++i) {
        const double h = r[i + 1] - r[i];
        const double rm = 0.5 * (r[i] + r[i + 1]);
        const double c = grid.omega * std::pow(rm, grid.N - 1) / h;
        const double d = u[i + 1] - u[i];
        out[i] -= c * d;
        out[i + 1] += c * d;
    }
    return out;
}

EnergyBreakdown norm_A_sq(const ProblemParams& params, const PotentialPair& pot,
                          const RadialField& u) {
    require_finite(u.vals, "norm_A_sq");
    const RadialGrid& g = *u.grid;
    const auto& w = g.w;

    EnergyBreakdown out;
    out.dirichlet = dirichlet_form(g, u.vals);
    out.aniso = params.kappa * out.dirichlet; // |x.grad u|^2/|x|^2 = u'^2 for radial u
    out.potential = chunked_sum(g.size(), [&](std::size_t i) {
        return v_star(params, pot, g.r[i]) * u.vals[i] * u.vals[i] * w[i];
    });
    out.nonlinear = weighted_p_integral(params, pot, u, true, PPower::positive_part);
    out.total_norm_sq = out.dirichlet + out.aniso + out.potential;
    out.J_value = out.total_norm_sq / 2.0 - out.nonlinear / params.p;
    return out;
}

EnergyBreakdown norm_theta_sq(const ProblemParams& params, const TensorField& u, const Vec& theta) {
    require_finite(u.vals, "norm_theta_sq");
    double t2 = 0.0;
    for (double ti : theta) t2 += ti * ti;
    if (std::abs(std::sqrt(t2) - 1.0) > 1e-12) throw DomainError("norm_theta_sq: theta not unit");

    const TensorGrid& g = *u.grid;
    const auto grad = gradient_tensor(u);
    const double vol = g.cell_volume;
    const double p = params.p;

    EnergyBreakdown out;
    out.dirichlet = vol * chunked_sum(g.size(), [&](std::size_t i) {
        return grad[0].vals[i] * grad[0].vals[i] + grad[1].vals[i] * grad[1].vals[i] +
               grad[2].vals[i] * grad[2].vals[i];
    });
    out.aniso = params.kappa * vol * chunked_sum(g.size(), [&](std::size_t i) {
        const double d = theta[0] * grad[0].vals[i] + theta[1] * grad[1].vals[i] +
                         theta[2] * grad[2].vals[i];
        return d * d;
    });
    out.potential = params.a * vol *
                    chunked_sum(g.size(), [&](std::size_t i) { return u.vals[i] * u.vals[i]; });
    out.nonlinear = params.mu * vol * chunked_sum(g.size(), [&](std::size_t i) {
        const double up = u.vals[i] > 0.0 ? u.vals[i] : 0.0;
        return std::pow(up, p);
    });
    out.total_norm_sq = out.dirichlet + out.aniso + out.potential;
    out.J_value = out.total_norm_sq / 2.0 - out.nonlinear / p;
    return out;
}

double weighted_p_integral(const ProblemParams& params, const PotentialPair& pot,
                           const RadialField& u, bool use_kstar, PPower power) {
    require_finite(u.vals, "weighted_p_integral");
    const RadialGrid& g = *u.grid;
    const double p = params.p;
    return chunked_sum(g.size(), [&](std::size_t i) {
        const double v = u.vals[i];
        const double base = power == PPower::positive_part ? (v > 0.0 ? v : 0.0) : std::abs(v);
        if (base == 0.0) return 0.0;
        const double weight = use_kstar ? k_star(params, pot, g.r[i]) : params.mu;
        return weight * std::pow(base, p) * g.w[i];
    });
}

double J_value(const ProblemParams& params, const PotentialPair& pot, const RadialField& u) {
    return norm_A_sq(params, pot, u).J_value;
}

double J_theta_value(const ProblemParams& params, const TensorField& u, const Vec& theta) {
    return norm_theta_sq(params, u, theta).J_value;
}

RadialField J_gradient(const ProblemParams& params, const PotentialPair& pot,
                       const RadialField& u) {
    require_finite(u.vals, "J_gradient");
    const RadialGrid& g = *u.grid;
    const std::size_t M = g.size();
    const double stiff_coef = 1.0 + params.kappa; // (1 - b/2)^2
    const double pm1 = params.p - 1.0;

    const std::vector<double> ku = dirichlet_apply(g, u.vals);

    RadialField grad(g);
    for (std::size_t i = 0; i < M; ++i) {
        const double up = u.vals[i] > 0.0 ? u.vals[i] : 0.0;
        grad.vals[i] = stiff_coef * ku[i] / g.w[i] + v_star(params, pot, g.r[i]) * u.vals[i] -
                       k_star(params, pot, g.r[i]) * std::pow(up, pm1);
    }
    return grad;
}

double quotient_A(const ProblemParams& params, const PotentialPair& pot, const RadialField& u) {
    const double denom = weighted_p_integral(params, pot, u, true, PPower::absolute);
    if (!(denom > 0.0)) throw ZeroDenominatorError("quotient_A: u vanishes on the K_* support");
    return norm_A_sq(params, pot, u).total_norm_sq / std::pow(denom, 2.0 / params.p);
}

double quotient_p(const ProblemParams& params, const RadialField& u) {
    require_finite(u.vals, "quotient_p");
    const RadialGrid& g = *u.grid;
    const double num =
        dirichlet_form(g, u.vals) +
        params.a *
            chunked_sum(g.size(), [&](std::size_t i) { return u.vals[i] * u.vals[i] * g.w[i]; });
    const double denom = chunked_sum(g.size(), [&](std::size_t i) {
        return std::pow(std::abs(u.vals[i]), params.p) * g.w[i];
    });
    if (!(denom > 0.0)) throw ZeroDenominatorError("quotient_p: u = 0");
    return num / std::pow(denom, 2.0 / params.p);
}

RayMax ray_max(double norm_sq, double p_integral, double p) {
    if (!(norm_sq > 0.0 && p_integral > 0.0)) throw DomainError("ray_max: nonpositive inputs");
    if (!(p > 2.0)) throw DomainError("ray_max: need p > 2");
    RayMax out;
    out.t_star = std::pow(norm_sq / p_integral, 1.0 / (p - 2.0));
    out.level = (0.5 - 1.0 / p) * std::pow(norm_sq / std::pow(p_integral, 2.0 / p), p / (p - 2.0));
    return out;
}

} // namespace vnls
