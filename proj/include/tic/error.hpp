#pragma once

#include <stdexcept>
#include <string>

namespace tic {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller passed an argument outside its contract (bad id, bad range, bad fraction).
struct InvalidArgument : Error {
    using Error::Error;
};

// A data file could not be parsed; message carries path and line number.
struct DataError : Error {
    using Error::Error;
};

// An enumeration / exhaustive operation exceeded its configured instance bound.
struct BoundExceeded : Error {
    using Error::Error;
};

} // namespace tic
