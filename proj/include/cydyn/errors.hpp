#ifndef CYDYN_ERRORS_HPP
#define CYDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cydyn {

/* Error taxonomy.
 *
 * Everything a caller can provoke with bad input derives from Error
 * (a runtime_error); the CLI maps these to exit code 1.  InternalError
 * derives from logic_error and means a library invariant broke; the CLI
 * maps it (and any other logic_error) to exit code 2.  Module-specific
 * errors that need payload (determinants, line numbers, residuals) live
 * in the module that owns them and derive from Error.
 */

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape mismatch: wrong matrix dimensions, wrong coordinate length,
// degree totals that don't add up, mismatched ambient spaces.
struct DimensionError : Error {
    using Error::Error;
};

// An argument is outside the operation's domain (zero polynomial where a
// nonzero one is required, zero curve class, non-positive log argument, ...).
struct DomainError : Error {
    using Error::Error;
};

// A polynomial operation required a squarefree input and got a repeated
// factor instead.
struct NotSquarefreeError : Error {
    using Error::Error;
};

// A "can't happen" condition: a verified postcondition failed, an exactness
// cross-check disagreed.  Indicates a bug in this library, not bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline void internal_check(bool ok, const std::string& msg) {
    if (!ok) throw InternalError(msg);
}

} // namespace cydyn

#endif
