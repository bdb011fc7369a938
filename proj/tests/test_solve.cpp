#include "doctest.h"

#include <cmath>

#include "oracle_shooting.hpp"
#include "vnls/energy.hpp"
#include "vnls/errors.hpp"
#include "vnls/grids.hpp"
#include "vnls/problem.hpp"
#include "vnls/solve.hpp"

using namespace vnls;

namespace {

RadialGrid default_grid() { return make_radial_grid(3, 1e-3, 40.0, 4000); }

} // namespace

TEST_CASE("isotropic ground-state constant matches the shooting oracle") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const RadialGrid g = default_grid();
    const QuotientReport rep = ground_state_sp(P, g, SolverOpts{});
    const double oracle_sp = oracle::shooting_sp(1.0);
    CHECK(std::abs(rep.value - oracle_sp) / oracle_sp < 5e-3);
    CHECK(rep.final_gradient_norm <= 1e-8);
    for (double v : rep.minimizer) CHECK(v >= 0.0);
}

TEST_CASE("ground-state constant scales as a^{1/4} in the mass coefficient") {
    // Substituting v(x) = w(sqrt(a) x) gives S_p(a) = a^{1-(N/2)(p-2)/p} S_p(1),
    // and the exponent is 1/4 for N=3, p=4.
    const RadialGrid g = default_grid();
    const double base = ground_state_sp(validate_params(3, 1.0, 1.0, 0.5, 1.0), g,
                                        SolverOpts{})
                            .value;
    for (double a : {0.5, 2.0}) {
        const ProblemParams P = validate_params(3, a, 1.0, 0.5, 1.0);
        const double got = ground_state_sp(P, g, SolverOpts{}).value;
        CHECK(std::abs(got - std::pow(a, 0.25) * base) / got < 1e-2);
    }
}

TEST_CASE("solver reports non-convergence honestly") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const RadialGrid g = default_grid();
    SolverOpts strangled;
    strangled.max_iters = 2;
    strangled.tol = 1e-14;
    CHECK_THROWS_AS(ground_state_sp(P, g, strangled), NoConvergenceError);
}

TEST_CASE("Nehari minimization on the model problem") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const PotentialPair pot = model_potentials(P);
    const RadialGrid g = default_grid();
    const QuotientReport rep = nehari_minimize(P, pot, g, SolverOpts{});

    CHECK(rep.value > 0.0);
    CHECK(rep.final_gradient_norm <= 1e-8);

    // Minimizer nonnegative and unimodal in r.
    bool rising_done = false;
    std::size_t peak = 0;
    double peak_val = 0.0;
    for (std::size_t i = 0; i < rep.minimizer.size(); ++i) {
        CHECK(rep.minimizer[i] >= 0.0);
        if (rep.minimizer[i] > peak_val) {
            peak_val = rep.minimizer[i];
            peak = i;
        }
    }
    const double slack = 1e-9 * peak_val;
    for (std::size_t i = 1; i < rep.minimizer.size(); ++i) {
        if (i <= peak)
            CHECK(rep.minimizer[i] >= rep.minimizer[i - 1] - slack);
        else
            CHECK(rep.minimizer[i] <= rep.minimizer[i - 1] + slack);
    }
    (void)rising_done;

    // Level formula vs the functional at the ray maximizer.
    RadialField u;
    u.grid = &rep.grid;
    u.vals = rep.minimizer;
    RadialField tu = u;
    for (auto& v : tu.vals) v *= rep.t_star;
    const double implied = (0.5 - 1.0 / P.p) * std::pow(rep.value, P.p / (P.p - 2.0));
    CHECK(rep.level == doctest::Approx(implied).epsilon(1e-12));
    CHECK(J_value(P, pot, tu) == doctest::Approx(rep.level).epsilon(1e-8));

    // The rescaled minimizer is a discrete critical point.
    const RadialField grad = J_gradient(P, pot, tu);
    double gnorm = 0.0;
    for (std::size_t i = 0; i < rep.grid.size(); ++i)
        gnorm += grad.vals[i] * grad.vals[i] * rep.grid.w[i];
    CHECK(std::sqrt(gnorm) <= 1e-8);
}

TEST_CASE("vanishing anisotropy reduces the Nehari level to the isotropic constant") {
    // As b -> 0 the transformed potentials flatten to the constant-coefficient
    // problem, so the full quotient approaches S_p (mu = 1).
    const ProblemParams P = validate_params(3, 1.0, 1e-6, 0.5e-6, 1.0);
    const PotentialPair pot = model_potentials(P);
    const RadialGrid g = default_grid();
    const double q = nehari_minimize(P, pot, g, SolverOpts{}).value;
    const double sp = ground_state_sp(P, g, SolverOpts{}).value;
    CHECK(std::abs(q - sp) / sp < 1e-2);
}

TEST_CASE("mountain-pass path agrees with the Nehari level") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const PotentialPair pot = model_potentials(P);
    const RadialGrid g = default_grid();
    const QuotientReport nehari = nehari_minimize(P, pot, g, SolverOpts{});

    // Endpoint validity: twice the ray maximizer has negative energy.
    RadialField e;
    e.grid = &nehari.grid;
    e.vals = nehari.minimizer;
    for (auto& v : e.vals) v *= 2.0 * nehari.t_star;
    CHECK(J_value(P, pot, e) < 0.0);

    const QuotientReport path = mountain_pass_path(P, pot, g, SolverOpts{});
    CHECK(path.value > 0.0);
    CHECK(std::abs(path.value - nehari.level) / nehari.level < 1e-2);
}

TEST_CASE("threshold report verdicts and constants") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const PotentialPair pot = model_potentials(P);
    const RadialGrid g = default_grid();
    const ThresholdReport rep = threshold_check(P, pot, g, SolverOpts{});

    CHECK_FALSE(rep.degraded);
    CHECK(rep.S == doctest::Approx(std::pow(0.5, 0.5) * rep.S_p).epsilon(1e-14));
    CHECK(rep.rhs ==
          doctest::Approx(std::pow(P.mu, -2.0 / P.p) * rep.S).epsilon(1e-14));
    // Exact algebraic link between the two threshold constants (mu = 1).
    const double expo = P.p / (P.p - 2.0);
    CHECK(rep.ps_threshold ==
          doctest::Approx((0.5 - 1.0 / P.p) * std::pow(rep.rhs, expo)).epsilon(1e-14));
    CHECK(rep.mp_level ==
          doctest::Approx((0.5 - 1.0 / P.p) * std::pow(rep.lhs, expo)).epsilon(1e-14));

    // Verdict coherence: the map x -> x^{p/(p-2)} is increasing.
    CHECK(rep.condition_18_holds == (rep.lhs < rep.rhs));
    CHECK(rep.level_below_threshold == (rep.mp_level < rep.ps_threshold));
    if (rep.condition_18_holds) CHECK(rep.level_below_threshold);

    // Annulus sweep: the Dirichlet-only quotient of the trial bumps decays
    // with the annulus radius for the model problem.
    REQUIRE(rep.sweep_radii.size() == 3);
    CHECK(rep.sweep_radii[0] == 10.0);
    CHECK(rep.sweep_dirichlet_quotient[1] < rep.sweep_dirichlet_quotient[0]);
    CHECK(rep.sweep_dirichlet_quotient[2] < rep.sweep_dirichlet_quotient[1]);
    for (double q : rep.sweep_quotient_A) CHECK(q > 0.0);

    // The minimizer beats every trial bump, so it furnishes the lhs.
    CHECK(rep.lhs == doctest::Approx(rep.nehari.value).epsilon(1e-14));
}

TEST_CASE("annulus trial shape") {
    const RadialGrid g = make_radial_grid(3, 1e-3, 40.0, 4000);
    const double r = 16.0;
    const RadialField trial = annulus_trial(g, r);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double rho = g.r[i];
        if (rho <= r / 2.0 || rho >= r) CHECK(trial.vals[i] == 0.0);
        if (rho >= 5.0 * r / 8.0 && rho <= 7.0 * r / 8.0)
            CHECK(trial.vals[i] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(trial.vals[i] >= 0.0);
        CHECK(trial.vals[i] <= 1.0 + 1e-12);
    }
}

TEST_CASE("initial guess is deterministic in the seed") {
    const RadialGrid g = make_radial_grid(3, 1e-3, 40.0, 1000);
    const RadialField a = initial_guess(g, 42, 0.1);
    const RadialField b = initial_guess(g, 42, 0.1);
    const RadialField c = initial_guess(g, 43, 0.1);
    CHECK(a.vals == b.vals);
    CHECK(a.vals != c.vals);
}

TEST_CASE("mesh stability of the Nehari quotient") {
    const ProblemParams P = validate_params(3, 1.0, 1.0, 0.5, 1.0);
    const PotentialPair pot = model_potentials(P);
    const double q0 =
        nehari_minimize(P, pot, make_radial_grid(3, 1e-3, 40.0, 4000), SolverOpts{}).value;
    const double q_fine =
        nehari_minimize(P, pot, make_radial_grid(3, 1e-3, 40.0, 8000), SolverOpts{}).value;
    const double q_wide =
        nehari_minimize(P, pot, make_radial_grid(3, 1e-3, 60.0, 6000), SolverOpts{}).value;
    CHECK(std::abs(q_fine - q0) / q0 < 1e-2);
    CHECK(std::abs(q_wide - q0) / q0 < 1e-2);
}
