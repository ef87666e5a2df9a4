#pragma once

#include <stdexcept>
#include <string>

namespace flownav {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario text could not be parsed. Carries the 1-based source line.
struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_)
        : Error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

/// Parsed data violates a domain invariant (message names the entity).
struct ValidationError : Error {
    using Error::Error;
};

/// Flow calibration cannot produce a usable scale factor.
struct CalibrationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace flownav
