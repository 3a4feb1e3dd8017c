#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Thrown when a precision oracle cannot reach the requested width.
class NonConvergent : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A hard invariant (e.g. Minkowski's product bounds) failed to certify.
class CertificationFailed : public Error {
public:
    using Error::Error;
};

class DegenerateNormal : public Error {
public:
    using Error::Error;
};

class TargetIsAlgebraicOfLowHeight : public Error {
public:
    using Error::Error;
};

class NoRealRoot : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

} // namespace pgn
