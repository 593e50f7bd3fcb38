#pragma once

#include <stdexcept>
#include <string>

namespace cswm {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Image or grid dimensions unsuitable for the requested operation.
struct DimensionError : Error {
    using Error::Error;
};

/// File could not be read, written, or parsed.
struct IoError : Error {
    using Error::Error;
};

/// Invalid parameter set (bad counts, lengths, solver settings, seeds).
struct ConfigError : Error {
    using Error::Error;
};

/// Numerical failure inside the reconstruction solver.
struct SolverError : Error {
    using Error::Error;
};

}  // namespace cswm
