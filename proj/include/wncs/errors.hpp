#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wncs {

/// Invalid model or experiment configuration (dimensions, ranges, unknown keys).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A function argument outside its documented domain.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller broke a protocol precondition (double enqueue, command during retransmission).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CorruptPolicyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite plant or estimator state during a simulation.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, std::int64_t slot)
        : std::runtime_error(what), slot_(slot) {}
    std::int64_t slot() const noexcept { return slot_; }

private:
    std::int64_t slot_;
};

}  // namespace wncs
