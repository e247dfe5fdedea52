#pragma once

#include <stdexcept>
#include <string>

namespace qheat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument sits on a pole (Gamma at a non-positive integer, zeta at s = 1, ...).
class PoleError : public Error {
public:
    using Error::Error;
};

/// Argument outside the region an operation supports.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A series or quadrature could not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed user input (spectrum files, run configurations).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace qheat
