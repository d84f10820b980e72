#pragma once

#include <stdexcept>
#include <string>

namespace ctcx {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Series division with a constant term of modulus at or below the unit tolerance.
class DivisionByNonUnit : public Error {
public:
    using Error::Error;
};

/// Negative shift over a coefficient that is not numerically zero.
class NonDivisibleByZPower : public Error {
public:
    using Error::Error;
};

class PointOutsideDisk : public Error {
public:
    using Error::Error;
};

class InvalidGamma : public Error {
public:
    using Error::Error;
};

/// The lambda-mu operator has a vanishing leading factor 1 - lambda + mu.
class DegenerateParams : public Error {
public:
    using Error::Error;
};

class UnknownCatalogName : public Error {
public:
    using Error::Error;
};

/// A parameter or input violates a documented invariant or precondition.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class FileIOError : public Error {
public:
    using Error::Error;
};

}  // namespace ctcx
