#pragma once

#include <stdexcept>
#include <string>

namespace wpt {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid numeric input to an operation (nonpositive frequency, negative
/// resistance, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A SystemModel violates its structural invariants.
struct ModelError : Error {
    using Error::Error;
};

/// The KVL matrix is singular or numerically rank-deficient at a frequency.
struct SingularSystemError : Error {
    double omega;
    SingularSystemError(const std::string& msg, double omega_)
        : Error(msg), omega(omega_) {}
};

/// Invalid loop geometry (coincident filaments, ordering violations,
/// positions outside the coil gap).
struct GeometryError : Error {
    using Error::Error;
};

/// Query outside the range of a coupling table; no silent extrapolation.
struct ExtrapolationError : Error {
    using Error::Error;
};

/// Adaptive quadrature exceeded its evaluation budget.
struct QuadratureError : Error {
    using Error::Error;
};

/// Slab reduction preconditions not met (non-identical cells or couplings).
struct ReductionError : Error {
    using Error::Error;
};

/// Sweep-level failures: empty results, nothing to compare.
struct SweepError : Error {
    using Error::Error;
};

/// Tuning failures: infeasible capacitor target, untunable topology.
struct TuningError : Error {
    using Error::Error;
};

/// Configuration parse/validation failure; message carries the field path.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace wpt
