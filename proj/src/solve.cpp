#include "vnls/solve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vnls/errors.hpp"
#include "vnls/geometry.hpp"
#include "vnls/reduce.hpp"

namespace vnls {

namespace {

// Coefficients of the radial weak form used by the descent solvers:
//   A(u) = stiff * int u'^2 dV + int Vw u^2 dV
//   B(u) = int Kw u^p dV            (fields kept nonnegative)
struct QuotientSpec {
    const RadialGrid* grid = nullptr;
    double stiff = 1.0;
    std::vector<double> Vw;
    std::vector<double> Kw;
    double p = 0.0;
};

QuotientSpec iso_spec(const ProblemParams& params, const RadialGrid& grid) {
    QuotientSpec s;
    s.grid = &grid;
    s.stiff = 1.0;
    s.Vw.assign(grid.size(), params.a);
    s.Kw.assign(grid.size(), 1.0);
    s.p = params.p;
    return s;
}

QuotientSpec aniso_spec(const ProblemParams& params, const PotentialPair& pot,
                        const RadialGrid& grid) {
    QuotientSpec s;
    s.grid = &grid;
    s.stiff = 1.0 + params.kappa;
    s.Vw.resize(grid.size());
    s.Kw.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s.Vw[i] = v_star(params, pot, grid.r[i]);
        s.Kw[i] = k_star(params, pot, grid.r[i]);
    }
    s.p = params.p;
    return s;
}

double quad_part(const QuotientSpec& s, const std::vector<double>& u) {
    const RadialGrid& g = *s.grid;
    const double pot =
        chunked_sum(g.size(), [&](std::size_t i) { return s.Vw[i] * u[i] * u[i] * g.w[i]; });
    return s.stiff * dirichlet_form(g, u) + pot;
}

double p_part(const QuotientSpec& s, const std::vector<double>& u) {
    const RadialGrid& g = *s.grid;
    return chunked_sum(g.size(), [&](std::size_t i) {
        const double up = u[i] > 0.0 ? u[i] : 0.0;
        return up == 0.0 ? 0.0 : s.Kw[i] * std::pow(up, s.p) * g.w[i];
    });
}

// Riesz representative of dA[h]/2: stiff * W^-1 K u + Vw u.
std::vector<double> stiff_apply(const QuotientSpec& s, const std::vector<double>& u) {
    const RadialGrid& g = *s.grid;
    auto out = dirichlet_apply(g, u);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.stiff * out[i] / g.w[i] + s.Vw[i] * u[i];
    return out;
}

double weighted_norm(const RadialGrid& g, const std::vector<double>& v) {
    return std::sqrt(chunked_sum(g.size(), [&](std::size_t i) { return v[i] * v[i] * g.w[i]; }));
}

// Banded Cholesky factorization of the quadratic-form operator
// H = stiff * K + diag(Vw w), with K the tridiagonal P1 stiffness. H is SPD because the form is
// coercive (discrete Hardy keeps it positive even when Vw dips negative
// for b < 0); a diagonal shift retry guards marginal cases. Solving with H
// preconditions the quotient descent into an inverse-iteration scheme.
class BandedOperator {
  public:
    BandedOperator(const QuotientSpec& s) {
        const RadialGrid& g = *s.grid;
        const std::size_t M = g.size();
        h0_.assign(M, 0.0);
        h1_.assign(M, 0.0);
        h2_.assign(M, 0.0);
        for (std::size_t i = 0; i + 1 < M; ++i) {
            const double h = g.r[i + 1] - g.r[i];
            const double rm = 0.5 * (g.r[i] + g.r[i + 1]);
            const double c = s.stiff * g.omega * std::pow(rm, g.N - 1) / h;
            h0_[i] += c;
            h0_[i + 1] += c;
            h1_[i] -= c;
        }
        for (std::size_t i = 0; i < M; ++i) h0_[i] += s.Vw[i] * g.w[i];
        double scale = 0.0;
        for (double v : h0_) scale = std::max(scale, std::abs(v));
        double shift = 0.0;
        for (int attempt = 0; attempt < 40; ++attempt) {
            if (factor(shift)) return;
            shift = shift == 0.0 ? 1e-14 * scale : shift * 10.0;
        }
        throw NoConvergenceError("BandedOperator: quadratic form not positive definite");
    }

    // solve H z = rhs
    std::vector<double> solve(const std::vector<double>& rhs) const {
        const std::size_t M = h0_.size();
        std::vector<double> y(M);
        for (std::size_t j = 0; j < M; ++j) {
            double v = rhs[j];
            if (j >= 1) v -= l1_[j - 1] * y[j - 1];
            if (j >= 2) v -= l2_[j - 2] * y[j - 2];
            y[j] = v / l0_[j];
        }
        for (std::size_t jj = M; jj-- > 0;) {
            double v = y[jj];
            if (jj + 1 < M) v -= l1_[jj] * y[jj + 1];
            if (jj + 2 < M) v -= l2_[jj] * y[jj + 2];
            y[jj] = v / l0_[jj];
        }
        return y;
    }

  private:
    bool factor(double shift) {
        const std::size_t M = h0_.size();
        l0_.assign(M, 0.0);
        l1_.assign(M, 0.0);
        l2_.assign(M, 0.0);
        for (std::size_t j = 0; j < M; ++j) {
            double d = h0_[j] + shift;
            if (j >= 1) d -= l1_[j - 1] * l1_[j - 1];
            if (j >= 2) d -= l2_[j - 2] * l2_[j - 2];
            if (!(d > 0.0)) return false;
            l0_[j] = std::sqrt(d);
            if (j + 1 < M) {
                double v = h1_[j];
                if (j >= 1) v -= l2_[j - 1] * l1_[j - 1];
                l1_[j] = v / l0_[j];
            }
            if (j + 2 < M) l2_[j] = h2_[j] / l0_[j];
        }
        return true;
    }

    std::vector<double> h0_, h1_, h2_; // upper bands of H
    std::vector<double> l0_, l1_, l2_; // bands of the Cholesky factor
};

double weighted_dot(const RadialGrid& g, const std::vector<double>& x,
                    const std::vector<double>& y) {
    return chunked_sum(g.size(), [&](std::size_t i) { return x[i] * y[i] * g.w[i]; });
}

struct DescentResult {
    std::vector<double> u;   // unit p-norm minimizer
    double Q = 0.0;
    int iterations = 0;
    double grad_norm_J = 0.0; // Riesz J-gradient norm at the rescaled critical point
};

// Normalized quotient descent with Barzilai-Borwein steps and a monotone
// backtracking safeguard. The iterate is kept nonnegative and at unit
// weighted p-norm; the quotient sequence is non-increasing.
DescentResult quotient_descent(const QuotientSpec& s, std::vector<double> u,
                               const SolverOpts& opts) {
    const RadialGrid& g = *s.grid;
    const double p = s.p;

    double B = p_part(s, u);
    if (!(B > 0.0)) throw ZeroDenominatorError("quotient_descent: initial guess has zero p-norm");
    const double invp = 1.0 / p;
    for (auto& x : u) x = std::max(0.0, x) / std::pow(B, invp);

    double Q = quad_part(s, u);
    const BandedOperator H(s);
    std::vector<double> grad(g.size());
    int it = 0;
    double gnorm = 0.0;

    for (it = 0; it < opts.max_iters; ++it) {
        const auto su = stiff_apply(s, u);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double up = u[i] > 0.0 ? u[i] : 0.0;
            grad[i] = 2.0 * (su[i] - Q * s.Kw[i] * std::pow(up, p - 1.0));
        }
        gnorm = weighted_norm(g, grad);
        const double t_star = std::pow(Q, 1.0 / (p - 2.0));
        if (0.5 * t_star * gnorm < opts.tol) break;

        // inverse-iteration proposal: H z = W Kw u^{p-1}
        std::vector<double> rhs(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double up = u[i] > 0.0 ? u[i] : 0.0;
            rhs[i] = s.Kw[i] * std::pow(up, p - 1.0) * g.w[i];
        }
        std::vector<double> z = H.solve(rhs);
        for (auto& x : z) x = std::max(0.0, x);
        const double Bz = p_part(s, z);
        if (!(Bz > 0.0))
            throw ZeroDenominatorError("quotient_descent: inverse-iteration step vanished");
        const double zscale = std::pow(Bz, invp);
        for (auto& x : z) x /= zscale;

        bool accepted = false;
        double theta = 1.0;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> cand(g.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                cand[i] = std::max(0.0, (1.0 - theta) * u[i] + theta * z[i]);
            const double Bc = p_part(s, cand);
            if (Bc > 0.0) {
                const double scale = std::pow(Bc, invp);
                for (auto& x : cand) x /= scale;
                const double Qc = quad_part(s, cand);
                // monotone up to roundoff: the quotient bottoms out at machine
                // precision while the iterate is still contracting
                if (Qc <= Q + 1e-13 * std::max(Q, 1.0)) {
                    u = std::move(cand);
                    Q = std::min(Q, Qc);
                    accepted = true;
                    break;
                }
            }
            theta /= 2.0;
        }
        if (!accepted) {
            ++it;
            break;
        }
    }

    // final J-gradient norm at t* u, using the exact ray relation
    const auto su = stiff_apply(s, u);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double up = u[i] > 0.0 ? u[i] : 0.0;
        grad[i] = 2.0 * (su[i] - Q * s.Kw[i] * std::pow(up, p - 1.0));
    }
    gnorm = weighted_norm(g, grad);
    const double t_star = std::pow(Q, 1.0 / (p - 2.0));
    const double jgrad = 0.5 * t_star * gnorm;
    if (jgrad > opts.tol) {
        throw NoConvergenceError("quotient_descent: stopped with gradient norm " +
                                 std::to_string(jgrad) + " above tolerance");
    }

    DescentResult out;
    out.u = std::move(u);
    out.Q = Q;
    out.iterations = it;
    out.grad_norm_J = jgrad;
    return out;
}

QuotientReport finish_report(const QuotientSpec& s, DescentResult res) {
    QuotientReport rep;
    rep.value = res.Q;
    rep.grid = *s.grid;
    rep.minimizer = std::move(res.u);
    rep.iterations = res.iterations;
    rep.final_gradient_norm = res.grad_norm_J;
    rep.t_star = std::pow(res.Q, 1.0 / (s.p - 2.0)); // B = 1 after normalization
    rep.level = (0.5 - 1.0 / s.p) * std::pow(res.Q, s.p / (s.p - 2.0));
    return rep;
}

} // namespace

RadialField initial_guess(const RadialGrid& grid, std::uint64_t seed, double perturb) {
    RadialField f(grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        f.vals[i] = std::exp(-grid.r[i] * grid.r[i] / 2.0);
    if (perturb > 0.0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jitter(0.0, perturb);
        for (auto& v : f.vals) v *= 1.0 + jitter(rng);
    }
    return f;
}

RadialField annulus_trial(const RadialGrid& grid, double r) {
    RadialField f(grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        f.vals[i] = annulus_bump_profile(r, grid.r[i]);
    return f;
}

QuotientReport ground_state_sp(const ProblemParams& params, const RadialGrid& grid,
                               const SolverOpts& opts) {
    const QuotientSpec s = iso_spec(params, grid);
    const RadialField init = initial_guess(grid, opts.seed, opts.perturb);
    return finish_report(s, quotient_descent(s, init.vals, opts));
}

QuotientReport nehari_minimize(const ProblemParams& params, const PotentialPair& pot,
                               const RadialGrid& grid, const SolverOpts& opts) {
    const QuotientSpec s = aniso_spec(params, pot, grid);
    const RadialField init = initial_guess(grid, opts.seed, opts.perturb);
    return finish_report(s, quotient_descent(s, init.vals, opts));
}

QuotientReport mountain_pass_path(const ProblemParams& params, const PotentialPair& pot,
                                  const RadialGrid& grid, const SolverOpts& opts) {
    const QuotientSpec s = aniso_spec(params, pot, grid);
    const double p = s.p;
    const std::size_t M = grid.size();
    const int P = std::max(4, opts.path_nodes);

    const auto J_of = [&](const std::vector<double>& u) {
        return 0.5 * quad_part(s, u) - p_part(s, u) / p;
    };
    const auto Jgrad = [&](const std::vector<double>& u) {
        auto out = stiff_apply(s, u);
        for (std::size_t i = 0; i < M; ++i) {
            const double up = u[i] > 0.0 ? u[i] : 0.0;
            out[i] -= s.Kw[i] * std::pow(up, p - 1.0);
        }
        return out;
    };

    // endpoint: scale a Gaussian past its ray maximum so J < 0
    std::vector<double> e = initial_guess(grid, opts.seed, opts.perturb).vals;
    {
        const double A = quad_part(s, e), B = p_part(s, e);
        if (!(B > 0.0)) throw ZeroDenominatorError("mountain_pass_path: endpoint has zero p-norm");
        const double t0 = 2.0 * std::pow(A / B, 1.0 / (p - 2.0));
        for (auto& x : e) x *= t0;
    }
    if (!(J_of(e) < 0.0)) throw BadEndpointError("mountain_pass_path: J(endpoint) >= 0");

    std::vector<std::vector<double>> path(P + 1, std::vector<double>(M, 0.0));
    for (int k = 0; k <= P; ++k) {
        const double t = double(k) / double(P);
        for (std::size_t i = 0; i < M; ++i) path[k][i] = t * e[i];
    }
    std::vector<double> J(P + 1);
    for (int k = 0; k <= P; ++k) J[k] = J_of(path[k]);

    const auto retension = [&]() {
        // resample the polygonal path at equal weighted arclength
        std::vector<double> cum(P + 1, 0.0);
        for (int k = 1; k <= P; ++k) {
            std::vector<double> d(M);
            for (std::size_t i = 0; i < M; ++i) d[i] = path[k][i] - path[k - 1][i];
            cum[k] = cum[k - 1] + weighted_norm(grid, d);
        }
        if (!(cum[P] > 0.0)) return;
        std::vector<std::vector<double>> fresh(P + 1, std::vector<double>(M, 0.0));
        fresh[0] = path[0];
        fresh[P] = path[P];
        int seg = 1;
        for (int k = 1; k < P; ++k) {
            const double target = cum[P] * double(k) / double(P);
            while (seg < P && cum[seg] < target) ++seg;
            const double denom = cum[seg] - cum[seg - 1];
            const double t = denom > 0.0 ? (target - cum[seg - 1]) / denom : 0.0;
            for (std::size_t i = 0; i < M; ++i)
                fresh[k][i] = (1.0 - t) * path[seg - 1][i] + t * path[seg][i];
        }
        path = std::move(fresh);
        for (int k = 0; k <= P; ++k) J[k] = J_of(path[k]);
    };

    const BandedOperator H(s);
    double tau = 1.0;
    int stall = 0;
    int it = 0;
    double gnorm = 0.0;
    double prev_max = 0.0;
    for (it = 0; it < opts.max_iters; ++it) {
        int m = 0;
        for (int k = 1; k <= P; ++k)
            if (J[k] > J[m]) m = k;
        if (m == 0 || m == P) throw BadEndpointError("mountain_pass_path: path max at an endpoint");

        const auto g = Jgrad(path[m]);
        gnorm = weighted_norm(grid, g);
        if (gnorm < opts.tol) break;

        // preconditioned direction: H d = W g (Newton step on the quadratic part)
        std::vector<double> rhs(M);
        for (std::size_t i = 0; i < M; ++i) rhs[i] = g[i] * grid.w[i];
        const std::vector<double> d = H.solve(rhs);
        const double slope = weighted_dot(grid, g, d); // = d^T H d > 0

        bool accepted = false;
        double t = tau;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> cand(M);
            for (std::size_t i = 0; i < M; ++i) cand[i] = path[m][i] - t * d[i];
            const double Jc = J_of(cand);
            if (Jc < J[m] - 1e-4 * t * slope) {
                path[m] = std::move(cand);
                J[m] = Jc;
                accepted = true;
                tau = std::min(t * 2.0, 1.0);
                break;
            }
            t /= 2.0;
        }
        if (!accepted) break; // saddle reached within line-search resolution

        if (it % 10 == 9) retension();

        double mx = J[0];
        for (int k = 1; k <= P; ++k) mx = std::max(mx, J[k]);
        if (it > 0 && std::abs(prev_max - mx) < 1e-12 * std::max(std::abs(mx), 1.0)) {
            if (++stall >= 10) break;
        } else {
            stall = 0;
        }
        prev_max = mx;
    }

    int m = 0;
    for (int k = 1; k <= P; ++k)
        if (J[k] > J[m]) m = k;

    // The saddle level is the maximum of J over the continuous piecewise-
    // linear path, not just over its nodes: sampling only the nodes
    // underestimates the ridge crest between them. Scan each segment and
    // refine the best bracket by golden section.
    const auto J_on_segment = [&](int k, double t) {
        std::vector<double> u(M);
        for (std::size_t i = 0; i < M; ++i)
            u[i] = (1.0 - t) * path[k][i] + t * path[k + 1][i];
        return J_of(u);
    };
    double level = J[m];
    int best_seg = m > 0 ? m - 1 : 0;
    double best_t = m > 0 ? 1.0 : 0.0;
    const int scan = 16;
    for (int k = 0; k < P; ++k)
        for (int q = 1; q < scan; ++q) {
            const double t = double(q) / scan;
            const double v = J_on_segment(k, t);
            if (v > level) {
                level = v;
                best_seg = k;
                best_t = t;
            }
        }
    {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = std::max(0.0, best_t - 1.0 / scan);
        double hi = std::min(1.0, best_t + 1.0 / scan);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = J_on_segment(best_seg, x1), f2 = J_on_segment(best_seg, x2);
        for (int gs = 0; gs < 40; ++gs) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = J_on_segment(best_seg, x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = J_on_segment(best_seg, x1);
            }
        }
        level = std::max(level, std::max(f1, f2));
    }

    QuotientReport rep;
    rep.value = level;
    rep.level = level;
    rep.grid = grid;
    rep.minimizer = path[m];
    rep.iterations = it;
    rep.final_gradient_norm = gnorm;
    const double A = quad_part(s, path[m]), B = p_part(s, path[m]);
    if (A > 0.0 && B > 0.0) rep.t_star = std::pow(A / B, 1.0 / (p - 2.0));
    return rep;
}

ThresholdReport threshold_check(const ProblemParams& params, const PotentialPair& pot,
                                const RadialGrid& grid, const SolverOpts& opts) {
    ThresholdReport rep;
    const double p = params.p;
    const double stretch = 1.0 - params.b / 2.0;

    rep.S_p = ground_state_sp(params, grid, opts).value;
    rep.S = std::pow(stretch, (p - 2.0) / p) * rep.S_p;
    rep.rhs = std::pow(params.mu, -2.0 / p) * rep.S;
    rep.ps_threshold =
        (0.5 - 1.0 / p) * std::pow(params.mu, -2.0 / (p - 2.0)) * std::pow(rep.S, p / (p - 2.0));

    double best = 0.0;
    bool have_best = false;
    try {
        rep.nehari = nehari_minimize(params, pot, grid, opts);
        best = rep.nehari.value;
        have_best = true;
    } catch (const NoConvergenceError&) {
        rep.degraded = true;
    }

    const double r_top = grid.r.back();
    for (double r : {10.0, 20.0, 40.0}) {
        if (r > r_top) continue;
        RadialField trial = annulus_trial(grid, r);
        RadialField du = radial_derivative(trial);
        const double dir = chunked_sum(
            grid.size(), [&](std::size_t i) { return du.vals[i] * du.vals[i] * grid.w[i]; });
        const double pk = weighted_p_integral(params, pot, trial, true, PPower::absolute);
        if (!(pk > 0.0)) continue;
        rep.sweep_radii.push_back(r);
        rep.sweep_dirichlet_quotient.push_back(dir / std::pow(pk, 2.0 / p));
        const double qa = quotient_A(params, pot, trial);
        rep.sweep_quotient_A.push_back(qa);
        if (!have_best || qa < best) {
            best = qa;
            have_best = true;
        }
    }
    if (!have_best) throw NoConvergenceError("threshold_check: no admissible trial quotient");

    rep.lhs = best;
    rep.mp_level = (0.5 - 1.0 / p) * std::pow(rep.lhs, p / (p - 2.0));
    rep.condition_18_holds = rep.lhs < rep.rhs;
    rep.level_below_threshold = rep.mp_level < rep.ps_threshold;
    return rep;
}

} // namespace vnls
