#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vdicke {

/// Invalid or undefined model parameter (e.g. g1 = 0 where mu_l is requested).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the region where a closed form applies.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Root bracket without a sign change.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative eigensolver gave up; carries the best residual reached.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Hilbert-space dimension would exceed the configured limit.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad run configuration (CLI flag or config-file key).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vdicke
