#include "vnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "vnls/energy.hpp"
#include "vnls/errors.hpp"
#include "vnls/reduce.hpp"

namespace vnls {

namespace {

double weighted_norm(const RadialGrid& grid, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * v[i] * grid.w[i];
    return std::sqrt(s);
}

// Trapezoid weights (with the surface factor) for caller-supplied nodes;
// used for the mapped x-coordinate grid whose spacing is not ours to choose.
RadialGrid grid_from_nodes(int N, std::vector<double> r) {
    RadialGrid g;
    g.N = N;
    g.omega = sphere_area(N);
    g.r = std::move(r);
    const std::size_t M = g.r.size();
    g.w.assign(M, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        double dr;
        if (i == 0)
            dr = (g.r[1] - g.r[0]) / 2.0;
        else if (i + 1 == M)
            dr = (g.r[M - 1] - g.r[M - 2]) / 2.0;
        else
            dr = (g.r[i + 1] - g.r[i - 1]) / 2.0;
        g.w[i] = g.omega * std::pow(g.r[i], N - 1) * dr;
    }
    return g;
}

double interp_profile(const RadialGrid& grid, const std::vector<double>& vals, double rho) {
    const auto& r = grid.r;
    if (rho <= r.front()) return vals.front();
    if (rho >= r.back()) return 0.0;
    auto it = std::upper_bound(r.begin(), r.end(), rho);
    const std::size_t i = static_cast<std::size_t>(it - r.begin());
    const double t = (rho - r[i - 1]) / (r[i] - r[i - 1]);
    return (1.0 - t) * vals[i - 1] + t * vals[i];
}

double smoothstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

// Natural cubic spline through (x_i, y_i); used to resample the solved
// profile onto a uniform grid in the original coordinates without adding
// interpolation error above the finite-difference noise floor.
class CubicSpline {
  public:
    CubicSpline(const std::vector<double>& x, const std::vector<double>& y) : x_(x), y_(y) {
        const std::size_t n = x.size();
        m_.assign(n, 0.0);
        if (n < 3) return;
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
        b[0] = 1.0;
        b[n - 1] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            d[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double f = a[i] / b[i - 1];
            b[i] -= f * c[i - 1];
            d[i] -= f * d[i - 1];
        }
        m_[n - 1] = d[n - 1] / b[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
    }

    double operator()(double t) const {
        if (t <= x_.front()) return y_.front();
        if (t >= x_.back()) return 0.0;
        auto it = std::upper_bound(x_.begin(), x_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin());
        const double h = x_[i] - x_[i - 1];
        const double A = (x_[i] - t) / h, B = (t - x_[i - 1]) / h;
        return A * y_[i - 1] + B * y_[i] +
               ((A * A * A - A) * m_[i - 1] + (B * B * B - B) * m_[i]) * h * h / 6.0;
    }

  private:
    std::vector<double> x_, y_;
    std::vector<double> m_; // second derivatives at the knots
};

std::string ratio_detail(const char* head, const std::vector<double>& xs) {
    std::ostringstream os;
    os << head;
    for (double x : xs) os << " " << format_number(x);
    return os.str();
}

} // namespace

CheckRecord hardy_check(const RadialGrid& grid, const std::vector<RadialField>& fields) {
    if (grid.N < 3) throw ParamError("hardy_check: requires N >= 3");
    const double cN = (grid.N - 2) * (grid.N - 2) / 4.0;
    double worst = std::numeric_limits<double>::infinity();
    bool all_ok = true;
    for (const auto& f : fields) {
        const RadialField df = radial_derivative(f);
        std::vector<double> lhs_i(grid.size()), rhs_i(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            lhs_i[i] = df.vals[i] * df.vals[i];
            rhs_i[i] = f.vals[i] * f.vals[i] / (grid.r[i] * grid.r[i]);
        }
        const double lhs = integrate_radial(lhs_i, grid);
        const double rhs = cN * integrate_radial(rhs_i, grid);
        if (lhs == 0.0 && rhs == 0.0) continue;
        const double margin = (lhs - rhs) / std::max(lhs, 1e-300);
        worst = std::min(worst, margin);
        if (!(lhs - rhs >= -1e-8 * lhs)) all_ok = false;
    }
    CheckRecord rec;
    rec.name = "hardy.margin";
    rec.anchor = "hardy.directional";
    rec.measured = std::isfinite(worst) ? worst : 0.0;
    rec.bound_or_target = 0.0;
    rec.tolerance = 1e-8;
    rec.passed = all_ok;
    rec.details = "worst normalized margin (LHS-RHS)/LHS over " + std::to_string(fields.size()) +
                  " probe fields";
    return rec;
}

CheckRecord hardy_sharpness_check(int N) {
    if (N < 3) throw ParamError("hardy_sharpness_check: requires N >= 3");
    const RadialGrid grid = make_radial_grid(N, 1e-3, 3000.0, 8000, Spacing::graded);
    const double alpha = (N - 2) / 2.0 - 0.05;
    // log-wide cutoff: ramp up over [3e-3, 1], plateau to 20, ramp down to 2000.
    const double l0 = std::log(3e-3), l1 = std::log(1.0);
    const double l2 = std::log(20.0), l3 = std::log(2000.0);
    RadialField v(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double u = std::log(grid.r[i]);
        const double g = smoothstep((u - l0) / (l1 - l0)) * (1.0 - smoothstep((u - l2) / (l3 - l2)));
        v.vals[i] = std::pow(grid.r[i], -alpha) * g;
    }
    const RadialField dv = radial_derivative(v);
    std::vector<double> lhs_i(grid.size()), rhs_i(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        lhs_i[i] = dv.vals[i] * dv.vals[i];
        rhs_i[i] = v.vals[i] * v.vals[i] / (grid.r[i] * grid.r[i]);
    }
    const double lhs = integrate_radial(lhs_i, grid);
    const double rhs = (N - 2) * (N - 2) / 4.0 * integrate_radial(rhs_i, grid);
    CheckRecord rec;
    rec.name = "hardy.sharpness";
    rec.anchor = "hardy.near-extremal";
    rec.measured = lhs / rhs;
    rec.bound_or_target = 1.3;
    rec.tolerance = 1e-8;
    rec.passed = rec.measured < 1.3 && rec.measured >= 1.0 - 1e-8;
    rec.details = "ratio LHS/RHS for r^{-(N-2)/2+0.05} times a log-wide bump; must stay >= 1";
    return rec;
}

CheckRecord quadratic_form_identity_check(const ProblemParams& params, const TensorField& u) {
    const TensorGrid& grid = *u.grid;
    const auto grad = gradient_tensor(u);
    double lhs = 0.0, rhs = 0.0, max_rel = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const auto x = grid.node(f);
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        const double g[3] = {grad[0].vals[f], grad[1].vals[f], grad[2].vals[f]};
        double form1 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double a_ij = (i == j ? 1.0 : 0.0) + params.kappa * x[i] * x[j] / r2;
                form1 += a_ij * g[i] * g[j];
            }
        const double dot = x[0] * g[0] + x[1] * g[1] + x[2] * g[2];
        const double form2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + params.kappa * dot * dot / r2;
        max_rel = std::max(max_rel, std::abs(form1 - form2) / (1.0 + std::abs(form2)));
        lhs += form1;
        rhs += form2;
    }
    lhs *= grid.cell_volume;
    rhs *= grid.cell_volume;
    CheckRecord rec;
    rec.name = "quadratic_form.split";
    rec.anchor = "aniso.quadratic-form";
    rec.measured = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
    rec.bound_or_target = 0.0;
    rec.tolerance = 1e-12;
    rec.passed = rec.measured < 1e-12 && max_rel < 1e-12;
    rec.details = "double-loop A_ij assembly vs split form; max pointwise rel diff " +
                  format_number(max_rel);
    return rec;
}

CheckRecord operator_identity_check(const ProblemParams& params, const AnalyticField& v,
                          const std::vector<Vec>& samples, const std::string& label) {
    const TransformSpec spec = make_transform(params);
    OperatorResidualOptions fine, coarse;
    fine.h_rel = 1e-3;
    coarse.h_rel = 1e-2;
    const auto res_f = operator_identity_residual(spec, params, v, samples, fine);
    const auto res_c = operator_identity_residual(spec, params, v, samples, coarse);
    const double max_f = *std::max_element(res_f.begin(), res_f.end());
    const double max_c = *std::max_element(res_c.begin(), res_c.end());
    const double slope = (max_f > 0.0 && max_c > 0.0) ? std::log10(max_c / max_f) : 2.0;
    CheckRecord rec;
    rec.name = "operator_identity." + label;
    rec.anchor = "transform.pointwise-operator";
    rec.measured = max_f;
    rec.bound_or_target = 1e-4;
    rec.tolerance = 1e-4;
    rec.passed = max_f < 1e-4 && slope >= 1.8 && slope <= 2.2;
    rec.details = "max residual at h=1e-3|x|; refinement slope " + format_number(slope) +
                  " (target [1.8,2.2])";
    return rec;
}

CheckRecord measure_check(const ProblemParams& params, const AnalyticField& integrand,
                          const std::string& label, double rel_tol) {
    const TransformSpec spec = make_transform(params);
    const double r_min = 1e-3, r_max = 20.0;
    const std::size_t M = 40000;
    const RadialGrid gx = make_radial_grid(params.N, r_min, r_max, M);
    std::vector<double> fx(gx.size());
    for (std::size_t i = 0; i < gx.size(); ++i) fx[i] = integrand.value(Vec{gx.r[i], 0.0, 0.0});
    const double lhs = integrate_radial(fx, gx);

    // y-nodes are the images of the x-nodes, but carry their own trapezoid
    // weights, so the two sums are genuinely different quadratures.
    const double e = (2.0 - params.b) / 2.0; // R = r^{(2-b)/2}
    std::vector<double> Rn(gx.size());
    for (std::size_t i = 0; i < gx.size(); ++i) Rn[i] = std::pow(gx.r[i], e);
    const RadialGrid gy = grid_from_nodes(params.N, std::move(Rn));
    std::vector<double> fy(gy.size());
    for (std::size_t i = 0; i < gy.size(); ++i) {
        const double R = gy.r[i];
        const double r = gx.r[i];
        fy[i] = integrand.value(Vec{r, 0.0, 0.0}) * jacobian_factor(spec, Vec{R, 0.0, 0.0});
    }
    const double rhs = integrate_radial(fy, gy);
    CheckRecord rec;
    rec.name = "measure." + label;
    rec.anchor = "transform.measure";
    rec.measured = rhs;
    rec.bound_or_target = lhs;
    rec.tolerance = rel_tol;
    rec.passed = std::abs(rhs - lhs) <= rel_tol * std::max(std::abs(lhs), 1e-300);
    rec.details = "x-side vs transported y-side quadrature, relative tolerance " +
                  format_number(rel_tol);
    return rec;
}

CheckRecord theta_invariance_check(const ProblemParams& params, const TensorField& u,
                                   const Vec& theta, const SignedPerm& perm) {
    std::array<bool, 3> seen{false, false, false};
    for (int d = 0; d < 3; ++d) {
        if (perm.src[d] < 0 || perm.src[d] > 2 || seen[perm.src[d]] ||
            (perm.sign[d] != 1 && perm.sign[d] != -1))
            throw BadPermutationError("theta_invariance_check: not a signed axis permutation");
        seen[perm.src[d]] = true;
    }
    const TensorGrid& grid = *u.grid;
    const std::size_t n = grid.n;
    TensorField g(grid);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t idx[3] = {i, j, k};
                std::size_t old_idx[3];
                for (int d = 0; d < 3; ++d)
                    old_idx[perm.src[d]] = perm.sign[d] > 0 ? idx[d] : n - 1 - idx[d];
                g.vals[(i * n + j) * n + k] =
                    u.vals[(old_idx[0] * n + old_idx[1]) * n + old_idx[2]];
            }
    Vec theta2(3);
    for (int d = 0; d < 3; ++d) theta2[d] = perm.sign[d] * theta[perm.src[d]];

    const EnergyBreakdown e1 = norm_theta_sq(params, u, theta);
    const EnergyBreakdown e2 = norm_theta_sq(params, g, theta2);
    const double dn = std::abs(e1.total_norm_sq - e2.total_norm_sq) /
                      (1.0 + std::abs(e1.total_norm_sq));
    const double dp = std::abs(e1.nonlinear - e2.nonlinear) / (1.0 + std::abs(e1.nonlinear));
    CheckRecord rec;
    rec.name = "theta.invariance";
    rec.anchor = "theta.lattice-symmetry";
    rec.measured = std::max(dn, dp);
    rec.bound_or_target = 0.0;
    rec.tolerance = 1e-12;
    rec.passed = rec.measured < 1e-12;
    rec.details = "norm and p-integral drift under signed axis permutation";
    return rec;
}

namespace {

struct StretchSums {
    double q_theta = 0.0;
    double q_iso = 0.0;
};

// Evaluate the theta=(1,0,0) quotient of u(x) = w(|(x1/s, x2, x3)|) with
// chain-rule gradients from the radial profile, and the isotropic quotient
// of the same per-node samples on the compressed lattice (weights vol/s).
// Their ratio is s^{(p-2)/p} exactly, independent of the samples.
StretchSums stretched_quotients(const ProblemParams& params, const RadialGrid& rgrid,
                                const std::vector<double>& w_vals,
                                const std::vector<double>& dw_vals, const TensorGrid& tgrid) {
    const double s = 1.0 - params.b / 2.0;
    const double p = params.p;
    double num_t = 0.0, den_t = 0.0, num_i = 0.0, den_i = 0.0;
    for (std::size_t f = 0; f < tgrid.size(); ++f) {
        const auto x = tgrid.node(f);
        const double z0 = x[0] / s;
        const double rho = std::sqrt(z0 * z0 + x[1] * x[1] + x[2] * x[2]);
        const double uv = interp_profile(rgrid, w_vals, rho);
        const double dv = interp_profile(rgrid, dw_vals, rho);
        const double g0 = dv * (x[0] / (s * s)) / rho;
        const double g1 = dv * x[1] / rho;
        const double g2 = dv * x[2] / rho;
        const double up = std::pow(std::abs(uv), p);
        num_t += (1.0 + params.kappa) * g0 * g0 + g1 * g1 + g2 * g2 + params.a * uv * uv;
        den_t += up;
        const double h0 = s * g0;
        num_i += h0 * h0 + g1 * g1 + g2 * g2 + params.a * uv * uv;
        den_i += up;
    }
    const double vol = tgrid.cell_volume;
    StretchSums out;
    out.q_theta = num_t * vol / std::pow(den_t * vol, 2.0 / p);
    out.q_iso = num_i * (vol / s) / std::pow(den_i * vol / s, 2.0 / p);
    return out;
}

} // namespace

CheckRecord scaling_law_check(const ProblemParams& params, const RadialGrid& grid,
                              const SolverOpts& opts, const ScalingLawOptions& sl) {
    const QuotientReport rep = ground_state_sp(params, grid, opts);
    RadialField w;
    w.grid = &rep.grid;
    w.vals = rep.minimizer;
    const RadialField dw = radial_derivative(w);
    const double s = 1.0 - params.b / 2.0;
    const TensorGrid tgrid = make_tensor_grid(3, sl.L * std::max(1.0, s), sl.n);
    const StretchSums sums = stretched_quotients(params, rep.grid, w.vals, dw.vals, tgrid);
    const double target = std::pow(s, (params.p - 2.0) / params.p) * rep.value;
    CheckRecord rec;
    rec.name = "scaling_law.quotient";
    rec.anchor = "aniso.scaling-law";
    rec.measured = sums.q_theta;
    rec.bound_or_target = target;
    rec.tolerance = 2e-2;
    rec.passed = std::abs(sums.q_theta - target) <= 2e-2 * std::abs(target);
    rec.details = "stretched ground-state quotient on " + std::to_string(tgrid.n) +
                  "^3 lattice vs factor times S_p=" + format_number(rep.value);
    return rec;
}

CheckRecord scaling_law_algebra_check(const ProblemParams& params, const RadialGrid& grid,
                                      const SolverOpts& opts, const ScalingLawOptions& sl) {
    (void)opts;
    // The rearrangement identity holds for arbitrary profile samples; a
    // Gaussian avoids a solver dependency.
    std::vector<double> w_vals(grid.size()), dw_vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        w_vals[i] = std::exp(-grid.r[i] * grid.r[i] / 2.0);
        dw_vals[i] = -grid.r[i] * w_vals[i];
    }
    const TensorGrid tgrid = make_tensor_grid(3, std::min(sl.L, 8.0), std::min<std::size_t>(sl.n, 48));
    const StretchSums sums = stretched_quotients(params, grid, w_vals, dw_vals, tgrid);
    const double s = 1.0 - params.b / 2.0;
    const double factor = std::pow(s, (params.p - 2.0) / params.p);
    CheckRecord rec;
    rec.name = "scaling_law.algebra";
    rec.anchor = "aniso.scaling-law-exact";
    rec.measured = sums.q_theta / sums.q_iso;
    rec.bound_or_target = factor;
    rec.tolerance = 1e-10;
    rec.passed = std::abs(rec.measured / factor - 1.0) < 1e-10;
    rec.details = "same nodes, stretched weights: quotient ratio vs (1-b/2)^{(p-2)/p}";
    return rec;
}

CheckRecord weak_equivalence_check(const ProblemParams& params, const PotentialPair& pot,
                                   const RadialField& v_solution,
                                   const std::vector<AnalyticField>& test_profiles) {
    const RadialGrid& gy = *v_solution.grid;
    const RadialField gradJ = J_gradient(params, pot, v_solution);
    const double gnorm = weighted_norm(gy, gradJ.vals);
    if (gnorm > 1e-6)
        throw NotConvergedError("weak_equivalence_check: gradient norm " + format_number(gnorm) +
                                " above tolerance 1e-6");

    const double beta = params.b * (params.N - 2) / 4.0;
    const double transport = 2.0 / (2.0 - params.b);
    const double map_exp = 2.0 / (2.0 - params.b);
    std::vector<double> rx(gy.size());
    for (std::size_t i = 0; i < gy.size(); ++i) rx[i] = std::pow(gy.r[i], map_exp);
    const double rx_lo = rx.front(), rx_hi = rx.back();

    const CubicSpline v_of_R(gy.r, v_solution.vals);
    const RadialField dv = radial_derivative(v_solution);

    std::vector<double> res_x, res_y, ratios;
    for (const auto& phi : test_profiles) {
        // Locate the profile support so the original-coordinate residual is
        // quadratured on a uniform grid resolving the profile, not on the
        // (locally much coarser) image of the transformed grid.
        double s_lo = 0.0, s_hi = 0.0;
        bool found = false;
        const std::size_t n_probe = 20000;
        const double probe_h = (rx_hi - rx_lo) / n_probe;
        for (std::size_t k = 0; k <= n_probe; ++k) {
            const double r = rx_lo + probe_h * static_cast<double>(k);
            if (phi.value(Vec{r, 0.0, 0.0}) != 0.0) {
                if (!found) s_lo = r;
                s_hi = r;
                found = true;
            }
        }
        if (!found) {
            res_x.push_back(0.0);
            res_y.push_back(0.0);
            ratios.push_back(0.0);
            continue;
        }
        // Bisect to the true support edges so the window never truncates the
        // profile (a clipped tail would leave a boundary term in the weak
        // residual far above the discretization noise being measured).
        auto edge = [&](double inside, double outside) {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (inside + outside);
                (phi.value(Vec{mid, 0.0, 0.0}) != 0.0 ? inside : outside) = mid;
            }
            return outside;
        };
        if (s_lo - probe_h > rx_lo) s_lo = edge(s_lo, s_lo - probe_h);
        if (s_hi + probe_h < rx_hi) s_hi = edge(s_hi, s_hi + probe_h);
        const double pad = 0.01 * (s_hi - s_lo) + 1e-6;
        const double win_lo = std::max(rx_lo, s_lo - pad);
        const double win_hi = std::min(rx_hi, s_hi + pad);
        std::vector<double> rw(gy.size());
        for (std::size_t i = 0; i < rw.size(); ++i)
            rw[i] = win_lo + (win_hi - win_lo) * static_cast<double>(i) / (rw.size() - 1);
        const RadialGrid gx = grid_from_nodes(params.N, rw);
        RadialField u;
        u.grid = &gx;
        u.vals.resize(gx.size());
        for (std::size_t i = 0; i < gx.size(); ++i)
            u.vals[i] =
                std::pow(gx.r[i], -beta) * v_of_R(std::pow(gx.r[i], 1.0 / map_exp));
        const RadialField du = radial_derivative(u);
        std::vector<double> ix(gx.size());
        for (std::size_t i = 0; i < gx.size(); ++i) {
            const double r = gx.r[i];
            const double pv = phi.value(Vec{r, 0.0, 0.0});
            const Vec pg = phi.gradient(Vec{r, 0.0, 0.0});
            const double pd = pg[0];
            const double ui = u.vals[i];
            ix[i] = du.vals[i] * pd + pot.V(r) * ui * pv -
                    pot.K(r) * std::pow(std::abs(ui), params.p - 2.0) * ui * pv;
        }
        res_x.push_back(integrate_radial(ix, gx));

        RadialField psi;
        psi.grid = &gy;
        psi.vals.resize(gy.size());
        for (std::size_t i = 0; i < gy.size(); ++i)
            psi.vals[i] = std::pow(rx[i], beta) * phi.value(Vec{rx[i], 0.0, 0.0});
        const RadialField dpsi = radial_derivative(psi);
        std::vector<double> iy(gy.size());
        for (std::size_t i = 0; i < gy.size(); ++i) {
            const double R = gy.r[i];
            const double vi = v_solution.vals[i];
            iy[i] = (1.0 + params.kappa) * dv.vals[i] * dpsi.vals[i] +
                    v_star(params, pot, R) * vi * psi.vals[i] -
                    k_star(params, pot, R) * std::pow(std::abs(vi), params.p - 2.0) * vi *
                        psi.vals[i];
        }
        res_y.push_back(integrate_radial(iy, gy));
        ratios.push_back(res_y.back() != 0.0 ? res_x.back() / (transport * res_y.back()) : 0.0);
    }
    double max_x = 0.0, max_y = 0.0;
    for (double v : res_x) max_x = std::max(max_x, std::abs(v));
    for (double v : res_y) max_y = std::max(max_y, std::abs(v));

    CheckRecord rec;
    rec.name = "weak_form.equivalence";
    rec.anchor = "transform.weak-residual";
    rec.measured = max_x;
    rec.bound_or_target = 10.0 * transport * max_y;
    rec.tolerance = 10.0;
    rec.passed = max_x <= rec.bound_or_target;
    rec.details = ratio_detail("per-profile residual ratios (x-side / transported y-side):", ratios);
    return rec;
}

CheckRecord level_lower_bound_check(const ProblemParams& params, double level, double S) {
    const double p = params.p;
    const double bound = (0.5 - 1.0 / p) * std::pow(params.mu, -2.0 / (p - 2.0)) *
                         std::pow(S, p / (p - 2.0));
    CheckRecord rec;
    rec.name = "level.lower_bound";
    rec.anchor = "level.limit-problem-bound";
    rec.measured = level;
    rec.bound_or_target = bound;
    rec.tolerance = 1e-2;
    rec.passed = level >= bound * (1.0 - 1e-2);
    rec.details = "constant-coefficient critical level vs (1/2-1/p) mu^{-2/(p-2)} S^{p/(p-2)}";
    return rec;
}

CheckRecord gradient_consistency_check(const ProblemParams& params, const PotentialPair& pot,
                                       const RadialGrid& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<std::vector<double>> fields;
    {
        std::vector<double> g(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            g[i] = std::exp(-grid.r[i] * grid.r[i] / 2.0);
        fields.push_back(g);
        std::vector<double> bump(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            bump[i] = annulus_bump_profile(10.0, grid.r[i]);
        fields.push_back(bump);
        std::vector<double> mixed(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            mixed[i] = g[i] * (1.0 + 0.3 * std::sin(3.0 * grid.r[i]));
        fields.push_back(mixed);
    }
    const double eps = 1e-5;
    double max_err = 0.0;
    for (const auto& uvals : fields) {
        RadialField u;
        u.grid = &grid;
        u.vals = uvals;
        const RadialField g = J_gradient(params, pot, u);
        for (int d = 0; d < 5; ++d) {
            std::vector<double> h(grid.size());
            for (auto& x : h) x = unif(rng);
            const double hn = weighted_norm(grid, h);
            for (auto& x : h) x /= hn;
            double pair = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) pair += g.vals[i] * h[i] * grid.w[i];
            RadialField up = u, um = u;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                up.vals[i] += eps * h[i];
                um.vals[i] -= eps * h[i];
            }
            const double fd =
                (J_value(params, pot, up) - J_value(params, pot, um)) / (2.0 * eps);
            max_err = std::max(max_err, std::abs(pair - fd) / (1.0 + std::abs(pair)));
        }
    }
    CheckRecord rec;
    rec.name = "gradient.consistency";
    rec.anchor = "functional.riesz-gradient";
    rec.measured = max_err;
    rec.bound_or_target = 0.0;
    rec.tolerance = 1e-5;
    rec.passed = max_err < 1e-5;
    rec.details = "Riesz pairing vs central differences of J, 3 fields x 5 directions";
    return rec;
}

std::vector<RadialField> make_probe_fields(const RadialGrid& grid, std::size_t count,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double r0 = grid.r.front(), r1 = grid.r.back();
    std::vector<RadialField> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        RadialField f(grid);
        if (k % 3 == 0) {
            const double c = 5.0 * unif(rng);
            const double sig = 0.3 + 1.7 * unif(rng);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double t = (grid.r[i] - c) / sig;
                f.vals[i] = std::exp(-t * t);
            }
        } else if (k % 3 == 1) {
            const double rr = 1.0 + (r1 - 1.0) * unif(rng);
            for (std::size_t i = 0; i < grid.size(); ++i)
                f.vals[i] = annulus_bump_profile(rr, grid.r[i]);
        } else {
            const std::size_t nb = 12;
            std::vector<double> br(nb), bv(nb);
            for (std::size_t j = 0; j < nb; ++j) {
                br[j] = r0 + (r1 - r0) * (j + unif(rng)) / nb;
                bv[j] = unif(rng);
            }
            std::sort(br.begin(), br.end());
            bv.front() = 0.0;
            bv.back() = 0.0;
            const double span = r1 - r0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double r = grid.r[i];
                auto it = std::upper_bound(br.begin(), br.end(), r);
                double val;
                if (it == br.begin())
                    val = 0.0;
                else if (it == br.end())
                    val = 0.0;
                else {
                    const std::size_t j = static_cast<std::size_t>(it - br.begin());
                    const double t = (r - br[j - 1]) / (br[j] - br[j - 1]);
                    val = (1.0 - t) * bv[j - 1] + t * bv[j];
                }
                const double taper = smoothstep((r - r0) / (0.1 * span)) *
                                     (1.0 - smoothstep((r - (r1 - 0.1 * span)) / (0.1 * span)));
                f.vals[i] = val * taper;
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Vec> make_sample_points(int N, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> rad(0.5, 2.0);
    std::vector<Vec> out;
    out.reserve(count);
    while (out.size() < count) {
        Vec x(N);
        double nrm = 0.0;
        for (auto& c : x) {
            c = gauss(rng);
            nrm += c * c;
        }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-6) continue;
        const double r = rad(rng);
        for (auto& c : x) c *= r / nrm;
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<CheckRecord> run_transform_checks(const ProblemParams& params,
                                              const SuiteOptions& opts) {
    std::vector<CheckRecord> recs;
    const auto samples = make_sample_points(params.N, 20, opts.seed);
    recs.push_back(operator_identity_check(params, gaussian_field(), samples, "gaussian"));
    recs.push_back(operator_identity_check(params, r2_gaussian_field(), samples, "r2_gaussian"));
    recs.push_back(operator_identity_check(params, y1_gaussian_field(), samples, "y1_gaussian"));

    recs.push_back(measure_check(params, gaussian_field(), "gaussian", 1e-5));
    recs.push_back(measure_check(params, ball_indicator_field(1.0), "ball_indicator", 1e-2));
    {
        const ProblemParams neg = validate_params(3, 1.0, -2.0, -1.0, 1.0);
        recs.push_back(measure_check(neg, annulus_bump_field(2.0), "annulus_bump_bneg", 1e-5));
    }

    const TensorGrid tgrid = make_tensor_grid(3, opts.tensor_L, opts.tensor_n);
    TensorField u(tgrid);
    for (std::size_t f = 0; f < tgrid.size(); ++f) {
        const auto x = tgrid.node(f);
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        u.vals[f] = std::exp(-r2 / 2.0) * (1.2 + std::sin(x[0] + 2.0 * x[1] + 3.0 * x[2]));
    }
    recs.push_back(quadratic_form_identity_check(params, u));

    SignedPerm perm;
    perm.src = {2, 0, 1};
    perm.sign = {1, -1, 1};
    recs.push_back(theta_invariance_check(params, u, Vec{0.6, 0.8, 0.0}, perm));

    const RadialGrid rgrid = make_radial_grid(params.N, 1e-3, 40.0, 4000);
    recs.push_back(scaling_law_algebra_check(params, rgrid, opts.solver, opts.scaling));
    return recs;
}

std::vector<CheckRecord> run_verify_suite(const ProblemParams& params, const PotentialPair& pot,
                                          const RadialGrid& grid, const SuiteOptions& opts) {
    std::vector<CheckRecord> recs;
    recs.push_back(hardy_check(grid, make_probe_fields(grid, 50, opts.seed)));
    recs.push_back(hardy_sharpness_check(params.N));

    for (auto& r : run_transform_checks(params, opts)) recs.push_back(std::move(r));

    recs.push_back(scaling_law_check(params, grid, opts.solver, opts.scaling));

    {
        // Constant-coefficient limit level from one grid, bound constant from
        // an independently refined grid.
        const QuotientReport rep = ground_state_sp(params, grid, opts.solver);
        RadialField w;
        w.grid = &rep.grid;
        w.vals = rep.minimizer;
        const RadialField dw = radial_derivative(w);
        std::vector<double> d2(rep.grid.size()), u2(rep.grid.size()), up(rep.grid.size());
        for (std::size_t i = 0; i < rep.grid.size(); ++i) {
            d2[i] = dw.vals[i] * dw.vals[i];
            u2[i] = w.vals[i] * w.vals[i];
            up[i] = std::pow(std::max(w.vals[i], 0.0), params.p);
        }
        const double norm_sq = integrate_radial(d2, rep.grid) +
                               params.a * integrate_radial(u2, rep.grid);
        const double p_int = params.mu * integrate_radial(up, rep.grid);
        const double level = ray_max(norm_sq, p_int, params.p).level;
        const RadialGrid fine = make_radial_grid(grid.N, grid.r.front(), grid.r.back(),
                                                 grid.size() * 3 / 2,
                                                 Spacing::uniform);
        const QuotientReport ref = ground_state_sp(params, fine, opts.solver);
        recs.push_back(level_lower_bound_check(params, level, ref.value));
    }

    {
        SolverOpts sopts = opts.solver;
        const QuotientReport rep = nehari_minimize(params, pot, grid, sopts);
        RadialField v;
        v.grid = &rep.grid;
        v.vals.resize(rep.grid.size());
        for (std::size_t i = 0; i < rep.grid.size(); ++i)
            v.vals[i] = rep.t_star * rep.minimizer[i];
        std::vector<AnalyticField> profiles;
        for (double c : {1.2, 2.0, 4.0, 7.0, 10.0}) profiles.push_back(annulus_bump_field(c));
        recs.push_back(weak_equivalence_check(params, pot, v, profiles));
    }

    recs.push_back(gradient_consistency_check(params, pot, grid, opts.seed));
    return recs;
}

void write_check_csv(const std::string& path, const std::vector<CheckRecord>& records) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw GridError("write_check_csv: cannot open " + tmp.string());
        out << "name,anchor,measured,target,tolerance,passed\n";
        for (const auto& r : records)
            out << r.name << ',' << r.anchor << ',' << format_number(r.measured) << ','
                << format_number(r.bound_or_target) << ',' << format_number(r.tolerance) << ','
                << (r.passed ? 1 : 0) << '\n';
    }
    fs::rename(tmp, target);
}

} // namespace vnls
