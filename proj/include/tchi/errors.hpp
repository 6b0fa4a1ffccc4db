#pragma once

#include <stdexcept>
#include <string>

namespace tchi {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent distribution description / configuration.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Mismatched or unsorted sample arrays.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A density that must be positive vanishes inside its support.
class PositivityError : public Error {
public:
    using Error::Error;
};

/// Root finder given an interval without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Integrand or function returned a non-finite value.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double where)
        : Error(what), where_(where) {}
    double where() const noexcept { return where_; }

private:
    double where_;
};

/// Requested accuracy was not reached within the subdivision budget.
/// Carries the best available estimate so callers can degrade gracefully.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_(best_estimate), err_(error_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return err_; }

private:
    double best_;
    double err_;
};

} // namespace tchi
