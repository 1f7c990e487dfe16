#pragma once

#include <stdexcept>
#include <string>

namespace morphoseg {

/// Base class for all library errors. Subclasses distinguish bad input
/// (I/O, format, parameters, shape) from internal invariant violations.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct ParamError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

} // namespace morphoseg
