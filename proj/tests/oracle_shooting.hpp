#pragma once

// Independent shooting oracle for the isotropic ground-state constant in
// three dimensions. The radial profile W of the constant-coefficient
// equation -W'' - (2/r)W' + a W = W^3 is found by bisecting the initial
// height W(0): too high and W crosses zero, too low and W turns back up
// before reaching zero. The quotient is then evaluated from the converged
// profile with plain trapezoid sums, sharing no code with the descent
// solver it cross-checks.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct ShotResult {
    int verdict = 0; // +1 overshoot (crossed zero), -1 undershoot (turned up)
    double s_p = 0.0;
};

inline ShotResult shoot(double a, double beta, bool accumulate) {
    const double h = 1e-3;
    const double sqrt_a = std::sqrt(a);
    // Series start: W(r) = beta + r^2 (a beta - beta^3)/6 + O(r^4).
    double r = h;
    double W = beta + h * h * (a * beta - beta * beta * beta) / 6.0;
    double U = h * (a * beta - beta * beta * beta) / 3.0;
    double i_grad = 0.0, i_mass = 0.0, i_four = 0.0;
    double prev_g = 0.0, prev_m = 0.0, prev_f = 0.0, prev_r = 0.0;
    auto rhs = [&](double rr, double w, double u, double& dw, double& du) {
        dw = u;
        du = -2.0 * u / rr + a * w - w * w * w;
    };
    ShotResult out;
    while (r < 30.0) {
        if (accumulate) {
            const double vol = 4.0 * M_PI * r * r;
            const double g = U * U * vol, m = W * W * vol, f = W * W * W * W * vol;
            if (prev_r > 0.0) {
                const double dr = r - prev_r;
                i_grad += 0.5 * dr * (g + prev_g);
                i_mass += 0.5 * dr * (m + prev_m);
                i_four += 0.5 * dr * (f + prev_f);
            }
            prev_g = g;
            prev_m = m;
            prev_f = f;
            prev_r = r;
        }
        double k1w, k1u, k2w, k2u, k3w, k3u, k4w, k4u;
        rhs(r, W, U, k1w, k1u);
        rhs(r + h / 2, W + h / 2 * k1w, U + h / 2 * k1u, k2w, k2u);
        rhs(r + h / 2, W + h / 2 * k2w, U + h / 2 * k2u, k3w, k3u);
        rhs(r + h, W + h * k3w, U + h * k3u, k4w, k4u);
        W += h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
        U += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        r += h;
        if (W < 0.0) {
            out.verdict = +1;
            break;
        }
        if (U > 0.0 && W < sqrt_a) {
            out.verdict = -1;
            break;
        }
        if (W < 1e-12) break; // decayed; integrals are complete
    }
    if (accumulate) out.s_p = (i_grad + a * i_mass) / std::sqrt(i_four);
    return out;
}

/// Ground-state quotient constant for (N=3, given a, p=4) by shooting.
inline double shooting_sp(double a) {
    // Bracket the critical height by a coarse scan, then bisect.
    double lo = 0.0, hi = 0.0;
    double prev_beta = 0.0;
    int prev_v = 0;
    for (double beta = 1.2 * std::sqrt(a); beta < 20.0 * std::sqrt(a); beta *= 1.25) {
        const int v = shoot(a, beta, false).verdict;
        if (v == 0) continue;
        if (prev_v == -1 && v == +1) {
            lo = prev_beta;
            hi = beta;
            break;
        }
        prev_beta = beta;
        prev_v = v;
    }
    if (hi == 0.0) throw std::runtime_error("shooting_sp: no bracket found");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (shoot(a, mid, false).verdict == +1 ? hi : lo) = mid;
    }
    return shoot(a, 0.5 * (lo + hi), true).s_p;
}

} // namespace oracle
