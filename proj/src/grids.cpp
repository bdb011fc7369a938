#include "vnls/grids.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "vnls/errors.hpp"
#include "vnls/reduce.hpp"

namespace vnls {

double sphere_area(int N) {
    return 2.0 * std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0);
}

RadialGrid make_radial_grid(int N, double r_min, double r_max, std::size_t M, Spacing spacing) {
    if (N < 3) throw GridError("make_radial_grid: N must be >= 3");
    if (!(r_min > 0.0 && r_min < r_max)) throw GridError("make_radial_grid: need 0 < r_min < r_max");
    if (M < 16) throw GridError("make_radial_grid: need M >= 16");

    RadialGrid g;
    g.N = N;
    g.omega = sphere_area(N);
    g.r.resize(M);
    if (spacing == Spacing::uniform) {
        const double h = (r_max - r_min) / double(M - 1);
        for (std::size_t i = 0; i < M; ++i) g.r[i] = r_min + double(i) * h;
    } else {
        const double q = std::log(r_max / r_min) / double(M - 1);
        for (std::size_t i = 0; i < M; ++i) g.r[i] = r_min * std::exp(double(i) * q);
    }
    g.r.back() = r_max;

    g.w.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        double dr;
        if (i == 0) dr = (g.r[1] - g.r[0]) / 2.0;
        else if (i == M - 1) dr = (g.r[M - 1] - g.r[M - 2]) / 2.0;
        else dr = (g.r[i + 1] - g.r[i - 1]) / 2.0;
        g.w[i] = g.omega * std::pow(g.r[i], N - 1) * dr;
    }
    return g;
}

RadialField radial_derivative(const RadialField& f) {
    const RadialGrid& g = *f.grid;
    const std::size_t M = g.size();
    if (M < 3) throw GridError("radial_derivative: need at least 3 nodes");
    RadialField d(g);
    const auto& r = g.r;
    const auto& v = f.vals;
    for (std::size_t i = 1; i + 1 < M; ++i) {
        const double h1 = r[i] - r[i - 1], h2 = r[i + 1] - r[i];
        d.vals[i] = -h2 / (h1 * (h1 + h2)) * v[i - 1] + (h2 - h1) / (h1 * h2) * v[i] +
                    h1 / (h2 * (h1 + h2)) * v[i + 1];
    }
    // one-sided second order at the ends (derivative of the local quadratic)
    {
        const double h1 = r[1] - r[0], h2 = r[2] - r[1];
        d.vals[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * v[0] + (h1 + h2) / (h1 * h2) * v[1] -
                    h1 / (h2 * (h1 + h2)) * v[2];
    }
    {
        const double h1 = r[M - 2] - r[M - 3], h2 = r[M - 1] - r[M - 2];
        d.vals[M - 1] = h2 / (h1 * (h1 + h2)) * v[M - 3] - (h1 + h2) / (h1 * h2) * v[M - 2] +
                        (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * v[M - 1];
    }
    return d;
}

double integrate_radial(const std::vector<double>& f_vals, const RadialGrid& grid) {
    if (f_vals.size() != grid.size()) throw GridError("integrate_radial: length mismatch");
    const auto& w = grid.w;
    return chunked_sum(f_vals.size(), [&](std::size_t i) { return f_vals[i] * w[i]; });
}

TensorGrid make_tensor_grid(int N, double L, std::size_t n) {
    if (N != 3) throw GridError("make_tensor_grid: only N = 3 is supported");
    if (!(L > 0.0)) throw GridError("make_tensor_grid: L must be positive");
    if (n % 2 != 0 || n < 4) throw GridError("make_tensor_grid: n must be even and >= 4");
    if (n > 128) throw GridError("make_tensor_grid: n > 128 not supported");

    TensorGrid g;
    g.N = 3;
    g.L = L;
    g.n = n;
    const double h = 2.0 * L / double(n);
    g.axis.resize(n);
    for (std::size_t k = 0; k < n; ++k) g.axis[k] = -L + (double(k) + 0.5) * h;
    g.cell_volume = h * h * h;
    return g;
}

std::array<TensorField, 3> gradient_tensor(const TensorField& f) {
    const TensorGrid& g = *f.grid;
    const std::size_t n = g.n;
    const double h = 2.0 * g.L / double(n);
    std::array<TensorField, 3> out{TensorField(g), TensorField(g), TensorField(g)};
    const auto& v = f.vals;

    const auto diff = [&](std::size_t idx, std::size_t stride, std::size_t pos) {
        if (pos == 0) return (-3.0 * v[idx] + 4.0 * v[idx + stride] - v[idx + 2 * stride]) / (2.0 * h);
        if (pos == n - 1)
            return (3.0 * v[idx] - 4.0 * v[idx - stride] + v[idx - 2 * stride]) / (2.0 * h);
        return (v[idx + stride] - v[idx - stride]) / (2.0 * h);
    };

#pragma omp parallel for schedule(static)
    for (long long flat = 0; flat < static_cast<long long>(g.size()); ++flat) {
        const std::size_t idx = static_cast<std::size_t>(flat);
        const std::size_t k = idx % n, j = (idx / n) % n, i = idx / (n * n);
        out[0].vals[idx] = diff(idx, n * n, i);
        out[1].vals[idx] = diff(idx, n, j);
        out[2].vals[idx] = diff(idx, 1, k);
    }
    return out;
}

double integrate_tensor(const std::vector<double>& f_vals, const TensorGrid& grid) {
    if (f_vals.size() != grid.size()) throw GridError("integrate_tensor: length mismatch");
    const double vol = grid.cell_volume;
    return vol * chunked_sum(f_vals.size(), [&](std::size_t i) { return f_vals[i]; });
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

namespace {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw GridError("cannot open " + tmp + " for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

void write_radial_csv(const std::string& path, const RadialField& f) {
    std::string content = "r,value\n";
    for (std::size_t i = 0; i < f.vals.size(); ++i) {
        content += format_number(f.grid->r[i]);
        content += ',';
        content += format_number(f.vals[i]);
        content += '\n';
    }
    atomic_write(path, content);
}

void write_tensor_csv(const std::string& path, const TensorField& f) {
    std::string content = "x1,x2,x3,value\n";
    for (std::size_t i = 0; i < f.vals.size(); ++i) {
        const auto x = f.grid->node(i);
        content += format_number(x[0]);
        content += ',';
        content += format_number(x[1]);
        content += ',';
        content += format_number(x[2]);
        content += ',';
        content += format_number(f.vals[i]);
        content += '\n';
    }
    atomic_write(path, content);
}

} // namespace vnls
