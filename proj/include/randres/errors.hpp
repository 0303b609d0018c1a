#pragma once

#include <stdexcept>
#include <string>

namespace randres {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing file, unreadable, write failure).
struct FileError : Error {
    using Error::Error;
};

/// Malformed content in an input file (DIMACS, proof, circuit, JSON).
struct FormatError : Error {
    using Error::Error;
};

/// Invalid parameters or arguments to an operation.
struct ParamError : Error {
    using Error::Error;
};

/// A configured resource budget (step count, enumeration size) was exceeded.
struct BudgetError : Error {
    using Error::Error;
};

} // namespace randres
