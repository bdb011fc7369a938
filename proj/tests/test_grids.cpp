#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "vnls/errors.hpp"
#include "vnls/grids.hpp"
#include "vnls/reduce.hpp"

using namespace vnls;

TEST_CASE("sphere surface areas") {
    CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("radial quadrature on a Gaussian") {
    const RadialGrid g = make_radial_grid(3, 1e-3, 20.0, 2000, Spacing::uniform);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-g.r[i] * g.r[i]);
    const double val = integrate_radial(f, g);
    CHECK(val == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-4));
}

TEST_CASE("radial quadrature of a ball indicator") {
    const RadialGrid g = make_radial_grid(3, 1e-3, 20.0, 4000, Spacing::uniform);
    const double R = 5.0;
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.r[i] <= R ? 1.0 : 0.0;
    const double ball = 4.0 * M_PI / 3.0 * R * R * R;
    CHECK(integrate_radial(f, g) == doctest::Approx(ball).epsilon(1e-2));
}

TEST_CASE("radial grid validation") {
    CHECK_THROWS_AS(make_radial_grid(3, 0.0, 1.0, 100), GridError);
    CHECK_THROWS_AS(make_radial_grid(3, 2.0, 1.0, 100), GridError);
    CHECK_THROWS_AS(make_radial_grid(3, 1e-3, 1.0, 8), GridError);
    const RadialGrid g = make_radial_grid(3, 1e-3, 1.0, 100);
    std::vector<double> wrong(g.size() + 1, 0.0);
    CHECK_THROWS_AS(integrate_radial(wrong, g), GridError);
    CHECK(integrate_radial(std::vector<double>(g.size(), 0.0), g) == 0.0);
}

TEST_CASE("graded spacing clusters near the inner radius") {
    const RadialGrid g = make_radial_grid(3, 1e-3, 10.0, 500, Spacing::graded);
    CHECK(g.r.front() == doctest::Approx(1e-3));
    CHECK(g.r.back() == doctest::Approx(10.0));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.r[i] > g.r[i - 1]);
    CHECK(g.r[1] - g.r[0] < g.r[g.size() - 1] - g.r[g.size() - 2]);
    for (double w : g.w) CHECK(w > 0.0);
}

TEST_CASE("radial derivative stencils") {
    const RadialGrid g = make_radial_grid(3, 0.1, 10.0, 512, Spacing::uniform);
    RadialField lin(g), quad(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        lin.vals[i] = g.r[i];
        quad.vals[i] = g.r[i] * g.r[i];
    }
    const RadialField dlin = radial_derivative(lin);
    for (double v : dlin.vals) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    const RadialField dquad = radial_derivative(quad);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(dquad.vals[i] == doctest::Approx(2.0 * g.r[i]).epsilon(1e-8));
}

TEST_CASE("radial derivative is second order (Richardson)") {
    auto max_err = [](std::size_t M) {
        const RadialGrid g = make_radial_grid(3, 0.5, 8.0, M, Spacing::uniform);
        RadialField f(g);
        for (std::size_t i = 0; i < g.size(); ++i) f.vals[i] = std::exp(-g.r[i]);
        const RadialField d = radial_derivative(f);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < g.size(); ++i)
            worst = std::max(worst, std::abs(d.vals[i] + std::exp(-g.r[i])));
        return worst;
    };
    const double e1 = max_err(200), e2 = max_err(400);
    CHECK(e1 / e2 >= 3.0); // trapezoid-order halving gain
}

TEST_CASE("tensor grid geometry") {
    const TensorGrid g = make_tensor_grid(3, 8.0, 64);
    CHECK(g.cell_volume == doctest::Approx(0.015625).epsilon(1e-14));
    double closest = 1e30;
    for (std::size_t f = 0; f < g.size(); ++f) {
        const auto x = g.node(f);
        closest = std::min(closest,
                           std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    }
    CHECK(closest == doctest::Approx((8.0 / 64.0) * std::sqrt(3.0)).epsilon(1e-12));

    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.node(i);
        f[i] = std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    }
    CHECK(integrate_tensor(f, g) == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-3));

    CHECK_THROWS_AS(make_tensor_grid(2, 8.0, 64), GridError);
    CHECK_THROWS_AS(make_tensor_grid(3, 8.0, 63), GridError);
    CHECK_THROWS_AS(make_tensor_grid(3, 8.0, 256), GridError);
}

TEST_CASE("tensor gradient stencils") {
    const TensorGrid g = make_tensor_grid(3, 4.0, 32);
    TensorField lin(g), half_sq(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.node(i);
        lin.vals[i] = x[0];
        half_sq.vals[i] = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0;
    }
    const auto glin = gradient_tensor(lin);
    const auto gsq = gradient_tensor(half_sq);
    const std::size_t n = g.n;
    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t j = 1; j + 1 < n; ++j)
            for (std::size_t k = 1; k + 1 < n; ++k) {
                const std::size_t f = (i * n + j) * n + k;
                const auto x = g.node(f);
                CHECK(glin[0].vals[f] == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(glin[1].vals[f] == doctest::Approx(0.0));
                CHECK(gsq[0].vals[f] == doctest::Approx(x[0]).epsilon(1e-10));
                CHECK(gsq[1].vals[f] == doctest::Approx(x[1]).epsilon(1e-10));
                CHECK(gsq[2].vals[f] == doctest::Approx(x[2]).epsilon(1e-10));
            }
}

TEST_CASE("chunked reduction is bitwise stable against the serial reference") {
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> data(100000);
    for (auto& v : data) v = unif(rng);
    auto term = [&](std::size_t i) { return data[i] * data[i] - 0.25 * data[i]; };
    const double a = chunked_sum(data.size(), term);
    const double b = chunked_sum(data.size(), term);
    CHECK(a == b); // bitwise repeatable
    // And close to the serial reference (associativity differs only at
    // the chunk boundaries).
    CHECK(a == doctest::Approx(serial_sum(data.size(), term)).epsilon(1e-13));
}

TEST_CASE("radial CSV dump format") {
    const RadialGrid g = make_radial_grid(3, 0.5, 2.0, 16);
    RadialField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f.vals[i] = std::exp(-g.r[i]);
    const std::string path = "test_radial_dump.csv";
    write_radial_csv(path, f);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,value");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == g.size());
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("format_number uses 12 significant digits with a decimal point") {
    CHECK(format_number(0.5) == "0.5");
    const std::string pi = format_number(M_PI);
    CHECK(pi.substr(0, 6) == "3.1415");
    CHECK(pi.find(',') == std::string::npos);
}
