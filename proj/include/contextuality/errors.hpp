#pragma once

#include <stdexcept>
#include <string>

namespace contextuality {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Sign-pattern maxima called with a list of unsupported length.
class InvalidArity : public Error {
public:
    using Error::Error;
};

/// A 2x2 cell computed from expectations came out negative.
class FrechetViolation : public Error {
public:
    using Error::Error;
};

/// A system failed validation where a valid one was required.
class InvalidSystem : public Error {
public:
    using Error::Error;
};

/// Causal LG treatment requested while <Q12> != <Q13>.
class CausalityViolation : public Error {
public:
    using Error::Error;
};

/// Generator parameters yield an invalid distribution.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

class MalformedProgram : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    using Error::Error;
};

class UnusablePivot : public Error {
public:
    using Error::Error;
};

/// Raised when a result that must exist for valid input does not; indicates a bug.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace contextuality
