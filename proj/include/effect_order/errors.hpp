#pragma once

#include <stdexcept>
#include <string>

namespace effect_order {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands of incompatible shape (non-square input, dimension mismatch).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A value lies outside the domain of the requested map or violates a type invariant.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A matrix or operator is singular at the working tolerance.
class SingularError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid serialized input.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace effect_order
