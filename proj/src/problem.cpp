#include "vnls/problem.hpp"

#include <cmath>
#include <string>

#include "vnls/errors.hpp"

namespace vnls {

ProblemParams validate_params(int N, double a, double b, double s, double mu) {
    if (N < 3) throw ParamError("N must be >= 3, got N=" + std::to_string(N));
    if (!(a > 0.0)) throw ParamError("a must be positive, got a=" + std::to_string(a));
    if (!(mu > 0.0)) throw ParamError("mu must be positive, got mu=" + std::to_string(mu));
    if (b == 0.0) throw ParamError("b must be nonzero");
    if (!(b < 2.0)) throw ParamError("b must satisfy b < 2, got b=" + std::to_string(b));
    const double ratio = s / b;
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ParamError("s/b must lie in (0,1), got s/b=" + std::to_string(ratio));
    }

    ProblemParams out;
    out.N = N;
    out.a = a;
    out.b = b;
    out.s = s;
    out.mu = mu;
    out.p = 2.0 * (N - 2.0 * s / b) / (N - 2.0);
    out.C_b = (b / 4.0) * (1.0 - b / 4.0) * (N - 2.0) * (N - 2.0);
    out.kappa = b * b / 4.0 - b;

    // 0 < s/b < 1 forces 2 < p < 2N/(N-2); keep the check anyway so a
    // broken edit upstream cannot hand out an inadmissible exponent.
    const double p_crit = 2.0 * N / (N - 2.0);
    if (!(out.p > 2.0 && out.p < p_crit)) {
        throw ParamError("derived p=" + std::to_string(out.p) + " outside (2, 2N/(N-2))");
    }
    return out;
}

PotentialPair model_potentials(const ProblemParams& params) {
    PotentialPair pair;
    const double a = params.a, b = params.b, s = params.s, mu = params.mu;
    pair.V = [a, b](double r) { return a / std::pow(1.0 + r, b); };
    pair.K = [mu, s](double r) { return mu / std::pow(1.0 + r, s); };
    pair.kind = PotentialKind::model;
    pair.v_limit = a;
    pair.k_limit = mu;
    return pair;
}

PotentialPair custom_potentials(std::function<double(double)> V, std::function<double(double)> K,
                                double v_limit, double k_limit) {
    PotentialPair pair;
    pair.V = std::move(V);
    pair.K = std::move(K);
    pair.kind = PotentialKind::custom;
    pair.v_limit = v_limit;
    pair.k_limit = k_limit;
    return pair;
}

double v_star(const ProblemParams& params, const PotentialPair& pot, double rho) {
    if (!(rho > 0.0)) throw DomainError("v_star requires rho > 0 (inverse-square term)");
    const double b = params.b;
    const double inner = std::pow(rho, 2.0 / (2.0 - b));
    return std::pow(rho, 2.0 * b / (2.0 - b)) * pot.V(inner) + params.C_b / (rho * rho);
}

double k_star(const ProblemParams& params, const PotentialPair& pot, double rho) {
    const double b = params.b, s = params.s;
    if (rho < 0.0) throw DomainError("k_star requires rho >= 0");
    if (rho == 0.0) {
        if (b < 0.0) throw DomainError("k_star is singular at rho = 0 for b < 0");
        return 0.0; // continuous extension, exponent 2s/(2-b) > 0
    }
    const double inner = std::pow(rho, 2.0 / (2.0 - b));
    return std::pow(rho, 2.0 * s / (2.0 - b)) * pot.K(inner);
}

namespace {
double dot(const Vec& x, const Vec& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}
} // namespace

Vec anisotropy_apply(double kappa, const Vec& y, const Vec& g) {
    if (y.size() != g.size()) throw DomainError("anisotropy_apply: dimension mismatch");
    const double y2 = dot(y, y);
    if (!(y2 > 0.0)) throw DomainError("anisotropy_apply: y = 0");
    const double coef = kappa * dot(y, g) / y2;
    Vec out = g;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * y[i];
    return out;
}

Vec b_theta_apply(double kappa, const Vec& theta, const Vec& g) {
    if (theta.size() != g.size()) throw DomainError("b_theta_apply: dimension mismatch");
    const double n2 = dot(theta, theta);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw DomainError("b_theta_apply: theta not unit");
    const double coef = kappa * dot(theta, g);
    Vec out = g;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * theta[i];
    return out;
}

} // namespace vnls
