#pragma once

#include <stdexcept>
#include <string>

namespace qhsf {

/// Violated precondition on user-supplied input (bad dimension, non-unit k, bad config, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (e.g. normalising zero).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical failure: non-finite integrand values, eigen-solver failure, degenerate fits.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation invoked in the wrong state, e.g. an uncalibrated Plancherel weight.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qhsf
