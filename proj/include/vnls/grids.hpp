#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace vnls {

/// Surface area of the unit (N-1)-sphere, 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

enum class Spacing { uniform, graded };

/// 1-D radial discretization of R^N integrals. Nodes start at r_min > 0;
/// quadrature weights are composite trapezoid including the omega r^{N-1}
/// surface factor. Fields are implicitly zero on [0, r_min) and past r_max.
struct RadialGrid {
    int N = 0;
    std::vector<double> r;
    std::vector<double> w;
    double omega = 0.0;

    std::size_t size() const { return r.size(); }
};

RadialGrid make_radial_grid(int N, double r_min, double r_max, std::size_t M,
                            Spacing spacing = Spacing::uniform);

struct RadialField {
    const RadialGrid* grid = nullptr;
    std::vector<double> vals;

    RadialField() = default;
    explicit RadialField(const RadialGrid& g) : grid(&g), vals(g.size(), 0.0) {}
};

/// Second-order derivative on a possibly nonuniform grid: three-point
/// central stencils inside, one-sided at the ends.
RadialField radial_derivative(const RadialField& f);

double integrate_radial(const std::vector<double>& f_vals, const RadialGrid& grid);

/// Cell-centered cubic lattice on [-L, L]^3, n nodes per axis (n even), so
/// the origin is never a node. Flat index = (i * n + j) * n + k.
struct TensorGrid {
    int N = 3;
    double L = 0.0;
    std::size_t n = 0;
    std::vector<double> axis; // per-axis node coordinates
    double cell_volume = 0.0;

    std::size_t size() const { return n * n * n; }
    std::array<double, 3> node(std::size_t flat) const {
        const std::size_t k = flat % n, j = (flat / n) % n, i = flat / (n * n);
        return {axis[i], axis[j], axis[k]};
    }
};

TensorGrid make_tensor_grid(int N, double L, std::size_t n);

struct TensorField {
    const TensorGrid* grid = nullptr;
    std::vector<double> vals;

    TensorField() = default;
    explicit TensorField(const TensorGrid& g) : grid(&g), vals(g.size(), 0.0) {}
};

/// Per-axis central differences (one-sided at faces), returned as N fields.
std::array<TensorField, 3> gradient_tensor(const TensorField& f);

double integrate_tensor(const std::vector<double>& f_vals, const TensorGrid& grid);

// CSV dumps: one header line, decimal point, \n line ends, 12 significant
// digits. Files are written atomically (temp + rename).
void write_radial_csv(const std::string& path, const RadialField& f);
void write_tensor_csv(const std::string& path, const TensorField& f);

std::string format_number(double v);

} // namespace vnls
