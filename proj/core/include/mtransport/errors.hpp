// errors.hpp: exception hierarchy shared by all mtransport modules

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mt {

// Two families: bad input (caller can fix the configuration) and numerical
// failure (input was valid but a solver or integrator gave up). The CLI maps
// them onto exit codes 1 and 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual bool is_numerical() const noexcept { return false; }
};

class InvalidParameterError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class NumericalError : public Error {
public:
    using Error::Error;
    bool is_numerical() const noexcept override { return true; }
};

// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& message, Eigen::MatrixXcd best, double error_bound, int panels,
                     Eigen::Index worst_row = 0, Eigen::Index worst_col = 0)
        : NumericalError(message),
          best_estimate(std::move(best)),
          error_bound(error_bound),
          panels(panels),
          worst_row(worst_row),
          worst_col(worst_col) {}

    Eigen::MatrixXcd best_estimate;
    double error_bound;
    int panels;
    Eigen::Index worst_row;
    Eigen::Index worst_col;
};

class SingularMatrixError : public NumericalError {
public:
    SingularMatrixError(const std::string& message, double omega) : NumericalError(message), omega(omega) {}
    double omega;
};

class NonContractiveMapError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IterationLimitError : public NumericalError {
public:
    IterationLimitError(const std::string& message, double last_residual, int iterations)
        : NumericalError(message), last_residual(last_residual), iterations(iterations) {}
    double last_residual;
    int iterations;
};

class DegenerateDenominatorError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateDiscretizationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoStoppingVoltageError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UndefinedCopError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// An internal identity (conservation law, Hermiticity, eigenvalue bound)
// failed by more than its tolerance.
class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace mt
