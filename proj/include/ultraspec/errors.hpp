#pragma once

#include <stdexcept>
#include <string>

namespace ultraspec {

/**
 * Error raised for malformed inputs: bad literals, invalid scalars for the
 * active field mode, domain constraint violations, unknown config keys,
 * unsatisfied operation preconditions.  Maps to process exit code 2.
 */
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Error raised when an operation is not available in the active field mode
 * or for the given configuration (e.g. Newton polygons outside p-adic mode,
 * boundary exponents that no scalar realizes).  Maps to exit code 2.
 */
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Error raised when an independent numeric probe contradicts the closed-form
 * prediction it is checking.  Maps to process exit code 3: a disagreement is
 * a hard failure, never a warning.
 */
class mismatch_error : public std::runtime_error {
public:
    explicit mismatch_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ultraspec
