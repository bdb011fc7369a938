#pragma once

#include <stdexcept>
#include <string>

namespace vnls {

struct ParamError : std::runtime_error {
    explicit ParamError(const std::string& what) : std::runtime_error("ParamError: " + what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error("DomainError: " + what) {}
};

struct StepError : std::runtime_error {
    explicit StepError(const std::string& what) : std::runtime_error("StepError: " + what) {}
};

struct GridError : std::runtime_error {
    explicit GridError(const std::string& what) : std::runtime_error("GridError: " + what) {}
};

struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& what) : std::runtime_error("NonFiniteError: " + what) {}
};

struct ZeroDenominatorError : std::runtime_error {
    explicit ZeroDenominatorError(const std::string& what)
        : std::runtime_error("ZeroDenominatorError: " + what) {}
};

struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& what)
        : std::runtime_error("NoConvergenceError: " + what) {}
};

struct BadEndpointError : std::runtime_error {
    explicit BadEndpointError(const std::string& what)
        : std::runtime_error("BadEndpointError: " + what) {}
};

struct BadPermutationError : std::runtime_error {
    explicit BadPermutationError(const std::string& what)
        : std::runtime_error("BadPermutationError: " + what) {}
};

struct NotConvergedError : std::runtime_error {
    explicit NotConvergedError(const std::string& what)
        : std::runtime_error("NotConvergedError: " + what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error("ConfigError: " + what) {}
};

} // namespace vnls
