#pragma once

#include <stdexcept>
#include <string>

namespace pentagrow {

// Base for every error raised by the library. Corruption signals (a broken
// geometric invariant) and I/O problems share this root so callers can catch
// once at the boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowError : Error {
    using Error::Error;
};

struct NotAGridDirection : Error {
    using Error::Error;
};

struct NoLabelingFound : Error {
    using Error::Error;
};

struct ClassificationMismatch : Error {
    using Error::Error;
};

struct NonMultipleAngle : Error {
    using Error::Error;
};

struct NonUnitSide : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

// Structure file errors.
struct MalformedFile : Error {
    using Error::Error;
};

struct VersionMismatch : Error {
    using Error::Error;
};

struct InvariantViolation : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace pentagrow
