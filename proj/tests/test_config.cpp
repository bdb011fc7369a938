#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "vnls/config.hpp"
#include "vnls/errors.hpp"

using namespace vnls;

TEST_CASE("empty config yields documented defaults") {
    const RunConfig c = parse_config("");
    CHECK(c.N == 3);
    CHECK(c.a == 1.0);
    CHECK(c.b == 1.0);
    CHECK(c.s == 0.5);
    CHECK(c.mu == 1.0);
    CHECK(c.r_min == 1e-3);
    CHECK(c.r_max == 40.0);
    CHECK(c.M == 4000);
    CHECK(c.spacing == Spacing::uniform);
    CHECK(c.tensor_n == 32);
    CHECK(c.tensor_L == 8.0);
    CHECK(c.solver.max_iters == 5000);
    CHECK(c.solver.tol == 1e-8);
    CHECK(c.solver.path_nodes == 40);
    CHECK(c.directory == ".");
    CHECK(c.precision == 12);
}

TEST_CASE("full config round trip") {
    const char* text = R"(# comment line
[params]
N = 3
a = 2.5
b = -1
s = -0.25   # trailing comment
mu = 1.5

[grid]
r_min = 0.01
r_max = 30
M = 2048
spacing = graded
tensor_n = 64
L = 6

[solver]
max_iters = 900
tol = 1e-10
path_nodes = 20
seed = 24301

[output]
directory = results
precision = 9
)";
    const RunConfig c = parse_config(text);
    CHECK(c.a == 2.5);
    CHECK(c.b == -1.0);
    CHECK(c.s == -0.25);
    CHECK(c.mu == 1.5);
    CHECK(c.r_min == 0.01);
    CHECK(c.r_max == 30.0);
    CHECK(c.M == 2048);
    CHECK(c.spacing == Spacing::graded);
    CHECK(c.tensor_n == 64);
    CHECK(c.tensor_L == 6.0);
    CHECK(c.solver.max_iters == 900);
    CHECK(c.solver.tol == 1e-10);
    CHECK(c.solver.path_nodes == 20);
    CHECK(c.solver.seed == 24301);
    CHECK(c.directory == "results");
    CHECK(c.precision == 9);
}

TEST_CASE("malformed configs are rejected") {
    CHECK_THROWS_AS(parse_config("[nosuchblock]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\nunknown = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nM = twelve\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nr_max = 1.2.3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nspacing = spectral\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("a = 1\n"), ConfigError);        // key before block
    CHECK_THROWS_AS(parse_config("[params\nN = 3\n"), ConfigError); // broken header
    CHECK_THROWS_AS(parse_config("[params]\njust words\n"), ConfigError);
}

TEST_CASE("load_config reads files and rejects missing ones") {
    const std::string path = "test_cfg_tmp.cfg";
    {
        std::ofstream out(path);
        out << "[params]\nb = 0.5\ns = 0.25\n";
    }
    const RunConfig c = load_config(path);
    CHECK(c.b == 0.5);
    CHECK(c.s == 0.25);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("definitely_not_here.cfg"), ConfigError);
}
