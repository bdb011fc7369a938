#include "vnls/geometry.hpp"

#include <cmath>
#include <cstddef>

#include "vnls/errors.hpp"

namespace vnls {

namespace {

double norm(const Vec& x) {
    double acc = 0.0;
    for (double xi : x) acc += xi * xi;
    return std::sqrt(acc);
}

} // namespace

TransformSpec make_transform(const ProblemParams& params) {
    return TransformSpec{params.b, params.N};
}

Vec forward_map(const TransformSpec& spec, const Vec& x) {
    const double r = norm(x);
    if (!(r > 0.0)) throw DomainError("forward_map: x = 0");
    const double scale = std::pow(r, -spec.b / 2.0);
    Vec y = x;
    for (double& yi : y) yi *= scale;
    return y;
}

Vec inverse_map(const TransformSpec& spec, const Vec& y) {
    const double R = norm(y);
    if (!(R > 0.0)) throw DomainError("inverse_map: y = 0");
    const double scale = std::pow(R, spec.b / (2.0 - spec.b));
    Vec x = y;
    for (double& xi : x) xi *= scale;
    return x;
}

double pull_field(const TransformSpec& spec, const AnalyticField& v, const Vec& x) {
    const double r = norm(x);
    if (!(r > 0.0)) throw DomainError("pull_field: x = 0");
    const double pref = std::pow(r, -spec.b * (spec.N - 2) / 4.0);
    return pref * v.value(forward_map(spec, x));
}

double jacobian_factor(const TransformSpec& spec, const Vec& y) {
    const double R = norm(y);
    if (!(R > 0.0)) throw DomainError("jacobian_factor: y = 0");
    return 2.0 / (2.0 - spec.b) * std::pow(R, spec.b * spec.N / (2.0 - spec.b));
}

std::vector<double> operator_identity_residual(const TransformSpec& spec, const ProblemParams& params,
                                     const AnalyticField& v, const std::vector<Vec>& x_samples,
                                     const OperatorResidualOptions& opts) {
    if (!(opts.h_rel > 0.0 && opts.h_rel <= 0.1)) {
        throw StepError("operator_identity_residual: relative step must lie in (0, 0.1]");
    }
    const double b = spec.b;
    const int N = spec.N;
    const double kappa = params.kappa;

    std::vector<double> residuals(x_samples.size(), 0.0);
    for (std::size_t k = 0; k < x_samples.size(); ++k) {
        const Vec& x = x_samples[k];
        const double r = norm(x);
        if (!(r > 0.0)) throw DomainError("operator_identity_residual: sample at origin");
        const double h = opts.h_rel * r;

        // finite-difference Laplacian of the pulled-back field
        const double uc = pull_field(spec, v, x);
        double lap = 0.0;
        for (int i = 0; i < N; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            if (!(norm(xp) > 0.0) || !(norm(xm) > 0.0)) {
                throw StepError("operator_identity_residual: stencil crosses the origin");
            }
            lap += pull_field(spec, v, xp) - 2.0 * uc + pull_field(spec, v, xm);
        }
        lap /= h * h;

        // transformed operator evaluated from the analytic derivatives of v,
        // with the divergence expanded: sum_ij A_ij d2v/dyidyj
        //   + kappa (N-1) (y . grad v)/|y|^2 - C_b v / |y|^2
        const Vec y = forward_map(spec, x);
        const double R2 = [&] {
            double acc = 0.0;
            for (double yi : y) acc += yi * yi;
            return acc;
        }();
        const double vy = v.value(y);
        const Vec g = v.gradient(y);
        const std::vector<Vec> H = v.hessian(y);

        double trace = 0.0, yHy = 0.0, ydotg = 0.0;
        for (int i = 0; i < N; ++i) {
            trace += H[i][i];
            ydotg += y[i] * g[i];
            for (int j = 0; j < N; ++j) yHy += y[i] * H[i][j] * y[j];
        }
        const double op = trace + kappa * yHy / R2 + kappa * (N - 1) * ydotg / R2 -
                          params.C_b * vy / R2;
        const double pref = std::pow(std::sqrt(R2), -b * (N + 2) / (2.0 * (2.0 - b)));
        residuals[k] = std::abs(lap - pref * op);
    }
    return residuals;
}

namespace {

AnalyticField radial_field(std::function<double(double)> f, std::function<double(double)> df,
                           std::function<double(double)> d2f) {
    AnalyticField out;
    out.value = [f](const Vec& y) { return f(norm(y)); };
    out.gradient = [f, df](const Vec& y) {
        const double R = norm(y);
        Vec g(y.size(), 0.0);
        if (R == 0.0) return g;
        const double c = df(R) / R;
        for (std::size_t i = 0; i < y.size(); ++i) g[i] = c * y[i];
        return g;
    };
    out.hessian = [df, d2f](const Vec& y) {
        const double R = norm(y);
        const std::size_t n = y.size();
        std::vector<Vec> H(n, Vec(n, 0.0));
        const double fr = df(R), frr = d2f(R);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                H[i][j] = (frr - fr / R) * y[i] * y[j] / (R * R);
                if (i == j) H[i][j] += fr / R;
            }
        }
        return H;
    };
    return out;
}

} // namespace

AnalyticField gaussian_field() {
    return radial_field([](double R) { return std::exp(-R * R); },
                        [](double R) { return -2.0 * R * std::exp(-R * R); },
                        [](double R) { return (4.0 * R * R - 2.0) * std::exp(-R * R); });
}

AnalyticField r2_gaussian_field() {
    return radial_field(
        [](double R) { return R * R * std::exp(-R * R); },
        [](double R) { return (2.0 * R - 2.0 * R * R * R) * std::exp(-R * R); },
        [](double R) { return (2.0 - 10.0 * R * R + 4.0 * R * R * R * R) * std::exp(-R * R); });
}

AnalyticField y1_gaussian_field() {
    AnalyticField out;
    out.value = [](const Vec& y) {
        double R2 = 0.0;
        for (double yi : y) R2 += yi * yi;
        return y[0] * std::exp(-R2);
    };
    out.gradient = [](const Vec& y) {
        double R2 = 0.0;
        for (double yi : y) R2 += yi * yi;
        const double e = std::exp(-R2);
        Vec g(y.size(), 0.0);
        for (std::size_t i = 0; i < y.size(); ++i) g[i] = -2.0 * y[0] * y[i] * e;
        g[0] += e;
        return g;
    };
    out.hessian = [](const Vec& y) {
        double R2 = 0.0;
        for (double yi : y) R2 += yi * yi;
        const double e = std::exp(-R2);
        const std::size_t n = y.size();
        std::vector<Vec> H(n, Vec(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                H[i][j] = y[0] * (4.0 * y[i] * y[j]) * e;
                if (i == j) H[i][j] -= 2.0 * y[0] * e;
                if (i == 0) H[i][j] -= 2.0 * y[j] * e;
                if (j == 0) H[i][j] -= 2.0 * y[i] * e;
            }
        }
        return H;
    };
    return out;
}

AnalyticField constant_field(double c) {
    AnalyticField out;
    out.value = [c](const Vec&) { return c; };
    out.gradient = [](const Vec& y) { return Vec(y.size(), 0.0); };
    out.hessian = [](const Vec& y) { return std::vector<Vec>(y.size(), Vec(y.size(), 0.0)); };
    return out;
}

AnalyticField ball_indicator_field(double R) {
    AnalyticField out;
    out.value = [R](const Vec& y) { return norm(y) <= R ? 1.0 : 0.0; };
    return out;
}

double annulus_bump_profile(double r, double rho) {
    // 1 on [5r/8, 7r/8], cubic-ramped to 0 at r/2 and r
    const double lo = r / 2.0, lo1 = 5.0 * r / 8.0, hi1 = 7.0 * r / 8.0, hi = r;
    if (rho <= lo || rho >= hi) return 0.0;
    if (rho < lo1) {
        const double t = (rho - lo) / (lo1 - lo);
        return t * t * (3.0 - 2.0 * t);
    }
    if (rho > hi1) {
        const double t = (hi - rho) / (hi - hi1);
        return t * t * (3.0 - 2.0 * t);
    }
    return 1.0;
}

double annulus_bump_derivative(double r, double rho) {
    const double lo = r / 2.0, lo1 = 5.0 * r / 8.0, hi1 = 7.0 * r / 8.0, hi = r;
    if (rho <= lo || rho >= hi) return 0.0;
    if (rho < lo1) {
        const double w = lo1 - lo;
        const double t = (rho - lo) / w;
        return 6.0 * t * (1.0 - t) / w;
    }
    if (rho > hi1) {
        const double w = hi - hi1;
        const double t = (hi - rho) / w;
        return -6.0 * t * (1.0 - t) / w;
    }
    return 0.0;
}

AnalyticField annulus_bump_field(double r) {
    AnalyticField out;
    out.value = [r](const Vec& y) { return annulus_bump_profile(r, norm(y)); };
    out.gradient = [r](const Vec& y) {
        const double R = norm(y);
        Vec g(y.size(), 0.0);
        if (R == 0.0) return g;
        const double c = annulus_bump_derivative(r, R) / R;
        for (std::size_t i = 0; i < y.size(); ++i) g[i] = c * y[i];
        return g;
    };
    return out;
}

} // namespace vnls
