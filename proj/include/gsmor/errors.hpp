#pragma once

#include <stdexcept>
#include <string>

namespace gsmor {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A scalar argument is outside its admissible range (negative density,
/// nonpositive step size, time outside the schedule horizon, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Grid steps do not divide the domain edges, or the grid is too coarse
/// to hold the requested layout.
struct GridError : Error {
    using Error::Error;
};

/// A heat-exchanger strip cannot be placed on the grid: rows off the
/// lattice, strip touching a boundary, or strips too close together.
struct AlignmentError : Error {
    using Error::Error;
};

/// Matrix dimensions do not match between operands.
struct ShapeError : Error {
    using Error::Error;
};

/// A transformation or solve requires better conditioning than the
/// input provides (singular balancing transformation, ...).
struct ConditioningError : Error {
    using Error::Error;
};

/// The dynamics matrix has an eigenvalue with nonnegative real part
/// where strict stability is required.
struct StabilityError : Error {
    using Error::Error;
};

/// A requested reduced order is outside {1, ..., n0}.
struct OrderError : Error {
    using Error::Error;
};

/// A state lies (numerically) outside the reachable subspace, so its
/// input energy is infinite.
struct UnreachableStateError : Error {
    using Error::Error;
};

/// The run configuration is inconsistent or incomplete.
struct ConfigError : Error {
    using Error::Error;
};

/// A time-stepping parameter is invalid (nonpositive step, horizon not
/// an integer multiple of the step, ...).
struct StepError : Error {
    using Error::Error;
};

}  // namespace gsmor
