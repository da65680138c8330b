#pragma once

#include <stdexcept>
#include <string>

namespace duhem {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A user-supplied constituent function returned NaN or +-inf.
struct NonFiniteEvaluation : Error {
    using Error::Error;
};

/// Parameter record violated its type invariants.
struct InvalidParams : Error {
    using Error::Error;
};

/// Adaptive step control shrank the step below the resolvable scale.
struct StepSizeUnderflow : Error {
    using Error::Error;
};

/// Adaptive quadrature exceeded its refinement depth cap.
struct QuadratureFailure : Error {
    using Error::Error;
};

/// Numeric inversion of a monotone map failed to bracket the target.
struct InversionFailure : Error {
    using Error::Error;
};

/// Root bracketing failed (the scanned range contains no sign change).
struct BracketFailure : Error {
    using Error::Error;
};

/// A sweep was requested over an empty set of initial conditions.
struct EmptyGrid : Error {
    using Error::Error;
};

/// Malformed or inconsistent configuration input.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace duhem
