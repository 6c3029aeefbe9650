#pragma once

#include <stdexcept>
#include <string>

namespace cusplab {

/// Violated precondition on user-supplied parameters (CLI exit code 1).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A formula evaluated outside the range where it is defined, e.g. τ₀ below threshold.
class DomainError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Factorization or eigensolver breakdown, failed quality checks (CLI exit code 2).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File system or parse failure (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cusplab
