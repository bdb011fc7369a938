#pragma once

#include <cstdint>
#include <string>

#include "vnls/grids.hpp"
#include "vnls/solve.hpp"

namespace vnls {

/// Parsed `[block] key = value` run configuration with documented defaults.
struct RunConfig {
    // [params]
    int N = 3;
    double a = 1.0;
    double b = 1.0;
    double s = 0.5;
    double mu = 1.0;
    // [grid]
    double r_min = 1e-3;
    double r_max = 40.0;
    std::size_t M = 4000;
    Spacing spacing = Spacing::uniform;
    std::size_t tensor_n = 32;
    double tensor_L = 8.0;
    // [solver]
    SolverOpts solver;
    // [output]
    std::string directory = ".";
    int precision = 12;
};

/// Parse a config file. Unknown blocks or keys are errors.
RunConfig load_config(const std::string& path);

/// Parse config text (used by load_config and the tests).
RunConfig parse_config(const std::string& text);

} // namespace vnls
