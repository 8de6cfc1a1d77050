#pragma once

#include <stdexcept>
#include <string>

namespace ncf {

// An enclosure straddles a decision boundary (integer for floor, interval
// endpoint for membership, ...): the result cannot be certified at the
// current radius.
class AmbiguousEnclosureError : public std::runtime_error {
public:
    explicit AmbiguousEnclosureError(const std::string& what)
        : std::runtime_error(what) {}
};

// Raised when the working-precision escalation cap is reached and the
// requested digits still cannot be certified.
class PrecisionExhaustedError : public std::runtime_error {
public:
    explicit PrecisionExhaustedError(const std::string& what)
        : std::runtime_error(what) {}
};

// An iterative scheme failed to reach its tolerance within the iteration
// budget.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace ncf
