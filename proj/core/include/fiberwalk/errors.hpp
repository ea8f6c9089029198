#pragma once

#include <stdexcept>
#include <string>

namespace fiberwalk {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (missing edge, colliding add, ...).
struct PreconditionViolation : Error {
    using Error::Error;
};

// A move changed the sufficient statistics; signals a generator bug.
struct StatMismatch : Error {
    using Error::Error;
};

struct InvalidSize : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

// An observed configuration has fitted probability below the floor.
struct DegenerateFit : Error {
    using Error::Error;
};

struct TooFewEdges : Error {
    using Error::Error;
};

// Enumeration guard tripped.
struct TooLarge : Error {
    using Error::Error;
};

// No realization of the requested degree sequence exists.
struct Infeasible : Error {
    using Error::Error;
};

// A sampled state fell outside the enumerated fiber.
struct OracleViolation : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct DuplicateEdge : Error {
    using Error::Error;
};

struct SelfLoop : Error {
    using Error::Error;
};

} // namespace fiberwalk
