#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strokelab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed interchange input. `line()` is 1-based; 0 when not line-addressed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? what + " at line " + std::to_string(line) : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Frame geometry too small to define a direction (reference line or upper arm).
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

// A metric could not be computed from the available data.
class InsufficientData : public Error {
public:
    using Error::Error;
};

} // namespace strokelab
