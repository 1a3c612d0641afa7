#pragma once

#include <stdexcept>
#include <string>

namespace promptret {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration or malformed input data. CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// A pipeline stage was asked to run before its inputs exist. CLI exit code 3.
struct MissingArtifactError : Error {
    using Error::Error;
};

// Language-model client failures. CLI exit code 4.
struct LmError : Error {
    using Error::Error;
};

// Transport-level failure that persisted through all retry attempts.
struct LmTransportError : LmError {
    using LmError::LmError;
};

// The server rejected a request because the prompt exceeds its context size.
// Deliberately distinct from transport failures: retrying cannot help.
struct LmContextOverflowError : LmError {
    using LmError::LmError;
};

}  // namespace promptret
