#pragma once

#include <stdexcept>
#include <string>

namespace tflats {

/// Base class for all library errors. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed an argument outside the documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input geometry is degenerate (non-convex body, zero gradient, singular quadric, ...).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// A numerical procedure lost accuracy or failed to converge.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Requested (k,n) or body kind lies outside what this library can compute.
class Unsupported : public Error {
public:
    using Error::Error;
};

}  // namespace tflats
