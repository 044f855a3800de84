#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Base class for all library errors. Configuration-class errors map to CLI
/// exit code 2, numerical-failure errors to exit code 3 (see cli.hpp).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix fails the Hermitian precondition of the eigensolver.
struct NotHermitian : Error {
    using Error::Error;
};

/// The eigensolver did not converge; signals numerical corruption upstream.
struct ConvergenceFailure : Error {
    using Error::Error;
};

/// Operands have incompatible dimensions.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A walk or run configuration violates its invariants.
struct InvalidConfig : Error {
    using Error::Error;
};

/// Line-walk support would leave the truncated lattice; steps exceed horizon.
struct BoundaryOverflow : Error {
    using Error::Error;
};

/// Per-step drift (trace or Hermiticity) exceeded the abort threshold.
struct NumericalCorruption : Error {
    using Error::Error;
};

/// Second moments are not defined on a ring.
struct CycleUnsupported : Error {
    using Error::Error;
};

/// Two distributions live on different lattices.
struct LatticeMismatch : Error {
    using Error::Error;
};

/// An operation over a series of records received an empty series.
struct EmptySeries : Error {
    using Error::Error;
};

/// Mixing threshold outside the open interval (0, 2).
struct InvalidEpsilon : Error {
    using Error::Error;
};

/// Resource-estimate mode is malformed.
struct InvalidMode : Error {
    using Error::Error;
};

/// Scaling fit received too few or non-increasing points.
struct DegenerateInput : Error {
    using Error::Error;
};

}  // namespace qwalk
