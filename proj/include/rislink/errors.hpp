#pragma once

#include <stdexcept>
#include <string>

namespace rislink {

// All recoverable numeric/domain failures derive from Error so callers can
// catch one type at API boundaries (the CLI maps them to exit code 2).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gamma evaluated within tolerance of a nonpositive real integer.
struct PoleError : Error {
    using Error::Error;
};

// Quadrature failed to reach the requested tolerance within max_nodes,
// or a lattice refinement stalled.
struct NonConvergence : Error {
    using Error::Error;
};

// Contour abscissa collided with a pole ladder; caller should perturb.
struct PoleOnContour : Error {
    using Error::Error;
};

// Deterministic multivariate evaluation refused above the dimension cap.
struct DimensionLimit : Error {
    using Error::Error;
};

// Residue expansion requested at a pole of order > 2.
struct HigherOrderPole : Error {
    using Error::Error;
};

// Alternating binomial sum lost more than the allowed number of digits.
struct AlternatingSumLoss : Error {
    using Error::Error;
};

// Operation called with the wrong arity (N != 1 on single-link paths).
struct ArityError : Error {
    using Error::Error;
};

// Fading model parameter outside its documented range.
struct ParamError : Error {
    using Error::Error;
};

// Argument outside an operation's domain (e.g. nearest_pdf outside (0,R)).
struct DomainError : Error {
    using Error::Error;
};

} // namespace rislink
