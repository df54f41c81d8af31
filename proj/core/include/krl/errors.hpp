#pragma once

#include <stdexcept>
#include <string>

#include "krl/trace.hpp"
#include "krl/types.hpp"

namespace krl {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(Index expected, Index got, const std::string& where)
        : Error(where + ": dimension mismatch (expected " + std::to_string(expected) + ", got " +
                std::to_string(got) + ")") {}
};

class NotInCone : public Error {
public:
    using Error::Error;
};

/// Invalid parameters for an instance, cone or solver configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

class NegativeEntry : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Hypothesis (H) could not be established for the given u.
class NoHConstant : public Error {
public:
    using Error::Error;
};

class BracketFailure : public Error {
public:
    using Error::Error;
};

/// Errors raised along a continuation run. `partial_trace` is filled in by
/// `continuation` with the levels that converged before the failure.
class SolverError : public Error {
public:
    using Error::Error;
    ContinuationTrace partial_trace;
};

class EvaluationFailure : public SolverError {
public:
    using SolverError::SolverError;
};

class PolicyCycle : public EvaluationFailure {
public:
    using EvaluationFailure::EvaluationFailure;
};

class NoConvergence : public SolverError {
public:
    NoConvergence(const std::string& msg, Vector last, double last_residual)
        : SolverError(msg), last_iterate(std::move(last)), residual(last_residual) {}
    Vector last_iterate;
    double residual;
};

class ZeroImage : public SolverError {
public:
    using SolverError::SolverError;
};

class ResidualTooLarge : public SolverError {
public:
    ResidualTooLarge(const std::string& msg, double lambda0, Vector x0, double res)
        : SolverError(msg), lambda(lambda0), x(std::move(x0)), residual(res) {}
    double lambda;
    Vector x;
    double residual;
};

}  // namespace krl
