#pragma once

#include <stdexcept>
#include <string>

namespace nanoshell {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input outside the validated domain (xi outside the bound window, x <= 0, ...).
struct DomainError : Error {
    using Error::Error;
};

/// An iterative kernel (series, ODE integration, quadrature) missed its
/// accuracy target.
struct ConvergenceError : Error {
    using Error::Error;
};

/// A root bracket could not be established or refined.
struct BracketError : Error {
    using Error::Error;
};

/// A semiclassical quantity was requested outside the regime where its
/// defining formula applies.
struct RegimeError : Error {
    using Error::Error;
};

}  // namespace nanoshell
