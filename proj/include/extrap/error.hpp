#pragma once

#include <stdexcept>
#include <string>

namespace extrap {

/// Malformed input data (bad pieces, non-concave envelope, non-finite entries).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a functional (t ≤ 0, t > L, L ≠ 1 where required).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Parameter outside its admissible range (p < 1, base ≤ 1, weight not finite).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A discretization could not meet its certified error bound.
class RefinementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad command line or configuration file.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace extrap
