#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace contracta {

/// Bad arguments, malformed configuration, violated preconditions. CLI exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed (integration blow-up, root finder stall, ...).
/// CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Integration aborted; carries the last valid state reached.
class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, double t, Eigen::VectorXd last)
        : NumericalError(what), t_last(t), last_state(std::move(last)) {}

    double t_last;
    Eigen::VectorXd last_state;
};

/// Iteration did not converge; carries the best iterate found.
class NoConvergenceError : public NumericalError {
public:
    NoConvergenceError(const std::string& what, Eigen::VectorXd best, double res)
        : NumericalError(what), best_iterate(std::move(best)), residual(res) {}

    Eigen::VectorXd best_iterate;
    double residual;
};

}  // namespace contracta
