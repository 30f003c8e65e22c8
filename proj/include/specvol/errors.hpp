#pragma once

#include <stdexcept>
#include <string>

namespace specvol {

// Error taxonomy mirrors the CLI exit codes: ConfigError -> 1,
// DataError -> 2, IoError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration or usage: malformed config keys, invalid windows,
// session constraints, missing required keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Bad input data: malformed tick lines, invariant violations,
// undefined aggregates, insufficient samples.
class DataError : public Error {
public:
    using Error::Error;
};

// Filesystem and stream failures.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace specvol
