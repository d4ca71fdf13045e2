#ifndef ZARISKI_ERRORS_HPP
#define ZARISKI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zariski {

/// Base class for every error raised by the library.
///
/// `DomainError` covers degenerate or unsupported mathematical input;
/// `SchemaError` covers malformed files. The CLI maps the two families to
/// different exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by zero") {}
    explicit DivisionByZero(const std::string& what) : DomainError(what) {}
};

class FieldMismatch : public DomainError {
public:
    FieldMismatch(int lhs, int rhs)
        : DomainError("field mismatch: Q(zeta_" + std::to_string(lhs) + ") vs Q(zeta_" +
                      std::to_string(rhs) + ")") {}
};

class InvalidEmbedding : public DomainError {
public:
    using DomainError::DomainError;
};

class PrecisionExhausted : public DomainError {
public:
    using DomainError::DomainError;
};

class NoSquareRootInField : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidCurve : public DomainError {
public:
    using DomainError::DomainError;
};

class NotABitangent : public DomainError {
public:
    using DomainError::DomainError;
};

class HyperflexLine : public DomainError {
public:
    using DomainError::DomainError;
};

/// Two lines meet on the branch quartic; the pairing is undefined there.
class OnBranchLocus : public DomainError {
public:
    using DomainError::DomainError;
};

/// Section data is neither "same point" nor "opposite point" at an intersection.
class Inconsistent : public DomainError {
public:
    using DomainError::DomainError;
};

class MalformedMatrix : public DomainError {
public:
    using DomainError::DomainError;
};

/// Internal consistency failure of the parity identity; indicates a bug.
class IdentityViolated : public Error {
public:
    using Error::Error;
};

class ConvergenceShortfall : public DomainError {
public:
    ConvergenceShortfall(std::size_t found, std::size_t expected)
        : DomainError("numeric bitangent search found " + std::to_string(found) + " of " +
                      std::to_string(expected) + " expected lines"),
          found_(found),
          expected_(expected) {}

    std::size_t found() const noexcept { return found_; }
    std::size_t expected() const noexcept { return expected_; }

private:
    std::size_t found_;
    std::size_t expected_;
};

class AmbiguousMatch : public DomainError {
public:
    using DomainError::DomainError;
};

class LimitExceeded : public DomainError {
public:
    using DomainError::DomainError;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace zariski

#endif  // ZARISKI_ERRORS_HPP
