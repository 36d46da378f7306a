#pragma once

#include <stdexcept>
#include <string>

namespace spreadersim {

/// Input data or configuration violates a documented invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A text input (CSV, JSON) could not be decoded.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The linear solver failed (non-convergence, indefinite matrix).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem read/write failure, message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace spreadersim
