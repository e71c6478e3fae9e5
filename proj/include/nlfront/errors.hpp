#pragma once

#include <stdexcept>
#include <string>

namespace nlfront {

struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

struct RangeViolationError : std::runtime_error {
    double time;
    RangeViolationError(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
};

struct GridMismatchError : std::runtime_error {
    explicit GridMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientSamplesError : std::runtime_error {
    explicit InsufficientSamplesError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nlfront
