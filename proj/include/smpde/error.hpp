// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace smpde {

/// Base class for every error raised by the numerical core.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (range, alignment, grid mismatch).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Declared coefficient metadata does not hold on the spot-check lattice.
class AssumptionError : public Error {
public:
    using Error::Error;
};

/// Input carries no information for an estimator (e.g. a constant series).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Picard iteration did not reach tolerance. Carries the distance trace.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> trace)
        : Error(what), distances(std::move(trace)) {}

    std::vector<double> distances;
};

namespace detail {
[[noreturn]] inline void domain_fail(const std::string& msg) { throw DomainError(msg); }
}  // namespace detail

}  // namespace smpde
