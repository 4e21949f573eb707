#pragma once

#include <stdexcept>
#include <string>

namespace nspline {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Dimension is zero or does not match the kernel / ensemble.
class InvalidDimension : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Non-positive radius, regularization or similar scalar parameter.
class InvalidParameter : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Requested activation power has no implementation for this operation.
class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

/// Rejection loop exceeded its retry cap.
class SamplerFailure : public Error {
public:
    using Error::Error;
};

class IllConditioned : public Error {
public:
    IllConditioned(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate_(condition_estimate) {}

    [[nodiscard]] double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Polynomial design matrix is rank deficient.
class DegenerateDesign : public Error {
public:
    using Error::Error;
};

/// Discretization too coarse to be meaningful.
class ResolutionError : public Error {
public:
    using Error::Error;
};

}  // namespace nspline
