#pragma once

#include <stdexcept>
#include <string>

namespace cr {

/// Invalid user-facing parameters (violated inequality, bad multiplicity...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A function or operator was queried outside its smoothness domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical procedure failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gamma pole hit.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace cr
