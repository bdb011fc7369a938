#include "doctest.h"

#include <cmath>
#include <random>

#include "vnls/errors.hpp"
#include "vnls/geometry.hpp"
#include "vnls/problem.hpp"

using namespace vnls;

namespace {

Vec random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    std::uniform_real_distribution<double> lograd(std::log(1e-3), std::log(1e3));
    Vec x{dir(rng), dir(rng), dir(rng)};
    double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (n < 1e-8) return random_point(rng);
    const double r = std::exp(lograd(rng));
    for (auto& c : x) c *= r / n;
    return x;
}

double norm3(const Vec& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

} // namespace

TEST_CASE("forward and inverse maps") {
    const TransformSpec spec{1.0, 3};
    const Vec y = forward_map(spec, {4.0, 0.0, 0.0});
    CHECK(y[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(y[1] == 0.0);

    const TransformSpec coercive{-2.0, 3};
    const Vec fixed = forward_map(coercive, {0.0, 1.0, 0.0});
    CHECK(fixed[1] == doctest::Approx(1.0).epsilon(1e-15));

    const Vec x = inverse_map(spec, {2.0, 0.0, 0.0});
    CHECK(x[0] == doctest::Approx(4.0).epsilon(1e-15));

    const Vec unit{0.6, 0.8, 0.0};
    const Vec same = inverse_map(spec, unit);
    CHECK(same[0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(same[1] == doctest::Approx(0.8).epsilon(1e-14));

    CHECK_THROWS_AS(forward_map(spec, {0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(inverse_map(spec, {0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("map round trips and the radius law") {
    std::mt19937_64 rng(11);
    for (double b : {1.0, -1.0, -2.0, 0.5}) {
        const TransformSpec spec{b, 3};
        for (int t = 0; t < 100; ++t) {
            const Vec x = random_point(rng);
            const Vec y = forward_map(spec, x);
            CHECK(norm3(y) ==
                  doctest::Approx(std::pow(norm3(x), 1.0 - b / 2.0)).epsilon(1e-12));
            const Vec back = inverse_map(spec, y);
            for (int i = 0; i < 3; ++i)
                CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
            const Vec fwd = forward_map(spec, inverse_map(spec, x));
            for (int i = 0; i < 3; ++i)
                CHECK(fwd[i] == doctest::Approx(x[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("pull_field prefactor") {
    const TransformSpec spec{1.0, 3};
    const AnalyticField one = constant_field(1.0);
    CHECK(pull_field(spec, one, {4.0, 0.0, 0.0}) ==
          doctest::Approx(std::pow(4.0, -0.25)).epsilon(1e-14));

    const AnalyticField g = gaussian_field();
    const Vec on_sphere{0.6, 0.0, 0.8};
    CHECK(pull_field(spec, g, on_sphere) ==
          doctest::Approx(g.value(on_sphere)).epsilon(1e-14));

    // Radial Gaussian in the transformed variable: closed form
    // |x|^{-b(N-2)/4} exp(-|x|^{2-b}).
    const Vec x{1.0, 1.0, 1.0};
    const double r = norm3(x);
    CHECK(pull_field(spec, g, x) ==
          doctest::Approx(std::pow(r, -0.25) * std::exp(-r)).epsilon(1e-13));

    CHECK_THROWS_AS(pull_field(spec, g, {0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("jacobian_factor") {
    const TransformSpec spec{1.0, 3};
    CHECK(jacobian_factor(spec, {2.0, 0.0, 0.0}) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(jacobian_factor(spec, {0.0, 1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(jacobian_factor(spec, {0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("analytic fields differentiate consistently") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.2, 1.2);
    const double h = 1e-5;
    for (const AnalyticField& f : {gaussian_field(), r2_gaussian_field(), y1_gaussian_field()}) {
        for (int t = 0; t < 10; ++t) {
            Vec x{unif(rng), unif(rng), unif(rng)};
            const Vec grad = f.gradient(x);
            const auto hess = f.hessian(x);
            for (int i = 0; i < 3; ++i) {
                Vec xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                const double fd = (f.value(xp) - f.value(xm)) / (2.0 * h);
                CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
                const Vec gp = f.gradient(xp), gm = f.gradient(xm);
                for (int j = 0; j < 3; ++j) {
                    const double fdh = (gp[j] - gm[j]) / (2.0 * h);
                    CHECK(hess[i][j] == doctest::Approx(fdh).epsilon(1e-5));
                }
            }
        }
    }
}

TEST_CASE("pointwise operator identity converges at second order") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const TransformSpec spec = make_transform(P);
    const std::vector<Vec> samples{{1.0, 0.5, -0.3}};

    OperatorResidualOptions coarse{1e-2}, fine{1e-3};
    const double rc = operator_identity_residual(spec, P, r2_gaussian_field(), samples, coarse)[0];
    const double rf = operator_identity_residual(spec, P, r2_gaussian_field(), samples, fine)[0];
    const double slope = std::log10(rc / rf); // one decade of h
    CHECK(slope > 1.8);
    CHECK(slope < 2.2);
}

TEST_CASE("operator identity against the power-law closed form") {
    // For constant v = c the pulled-back field is c |x|^alpha with
    // alpha = -b(N-2)/4, whose Laplacian is alpha(alpha+N-2)|x|^{alpha-2}.
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const TransformSpec spec = make_transform(P);
    const double c = 2.3, alpha = -P.b * (P.N - 2) / 4.0;
    const Vec x{0.9, -0.4, 0.7};
    const double r = norm3(x);
    const double lap = c * alpha * (alpha + P.N - 2) * std::pow(r, alpha - 2.0);

    // The identity's right-hand side for constant v reduces to the
    // inverse-square term alone; compare it to the closed-form Laplacian.
    const double rho = std::pow(r, 1.0 - P.b / 2.0);
    const double rhs = std::pow(rho, -P.b * (P.N + 2) / (2.0 * (2.0 - P.b))) *
                       (-P.C_b / (rho * rho)) * c;
    CHECK(rhs == doctest::Approx(lap).epsilon(1e-12));

    // And the finite-difference machinery agrees with both.
    const double resid =
        operator_identity_residual(spec, P, constant_field(c), {x}, OperatorResidualOptions{1e-3})[0];
    CHECK(resid < 1e-4 * std::max(1.0, std::abs(lap)));
}

TEST_CASE("operator identity residuals stay small on random samples") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    std::uniform_real_distribution<double> rad(0.5, 2.0);
    for (double b : {1.0, -1.0}) {
        const double ratio = 0.5;
        const ProblemParams P = validate_params(3, 1.0, b, ratio * b, 1.0);
        const TransformSpec spec = make_transform(P);
        std::vector<Vec> samples;
        while (samples.size() < 20) {
            Vec x{dir(rng), dir(rng), dir(rng)};
            const double n = norm3(x);
            if (n < 1e-3) continue;
            const double r = rad(rng);
            for (auto& cmp : x) cmp *= r / n;
            samples.push_back(x);
        }
        const auto res = operator_identity_residual(spec, P, gaussian_field(), samples);
        for (double v : res) CHECK(v < 1e-4);
    }
}

TEST_CASE("operator identity rejects bad samples") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const TransformSpec spec = make_transform(P);
    CHECK_THROWS_AS(
        operator_identity_residual(spec, P, gaussian_field(), {{0.0, 0.0, 0.0}}),
        DomainError);
    // Step so large the stencil would cross the origin.
    CHECK_THROWS_AS(operator_identity_residual(spec, P, gaussian_field(), {{1e-3, 0.0, 0.0}},
                                     OperatorResidualOptions{2.0}),
                    StepError);
}

TEST_CASE("annulus bump profile support") {
    const double r = 8.0;
    CHECK(annulus_bump_profile(r, r / 2.0) == 0.0);
    CHECK(annulus_bump_profile(r, r) == 0.0);
    CHECK(annulus_bump_profile(r, 0.75 * r) > 0.0);
    const AnalyticField f = annulus_bump_field(r);
    CHECK(f.value({0.75 * r, 0.0, 0.0}) ==
          doctest::Approx(annulus_bump_profile(r, 0.75 * r)).epsilon(1e-14));
    // Gradient matches the radial derivative along a ray.
    const Vec g = f.gradient({0.7 * r, 0.0, 0.0});
    CHECK(g[0] == doctest::Approx(annulus_bump_derivative(r, 0.7 * r)).epsilon(1e-12));
}
