#pragma once

#include <stdexcept>
#include <string>

namespace iwk {

/// Input violates the documented precondition of an operation.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested p-adic precision exceeds what the operation can certify.
class PrecisionBudgetError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Attempt to invert a non-unit of Z/p^N (or a rational with p in the denominator).
class DivisionByNonUnit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed serialized input.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quantity that must be integral is not (reported with where it happened).
class IntegralityError : public std::runtime_error {
public:
    IntegralityError(const std::string& what, int layer) : std::runtime_error(what), layer_(layer) {}
    int layer() const { return layer_; }

private:
    int layer_;
};

}  // namespace iwk
