#pragma once

#include <stdexcept>
#include <string>

namespace stieltjes {

// Base class for all numeric failures raised by this library.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (zero log argument, etc).
struct domain_error : numeric_error {
    using numeric_error::numeric_error;
};

// Evaluation at (or too close to) a pole. Carries the offending integer
// when the pole lattice is the non-positive integers.
struct pole_error : domain_error {
    explicit pole_error(const std::string& what, long at_integer = 0)
        : domain_error(what), at(at_integer) {}
    long at;
};

// An iteration failed to converge within its step budget.
struct convergence_error : numeric_error {
    using numeric_error::numeric_error;
};

// Two routes that must agree disagreed beyond tolerance.
struct consistency_error : numeric_error {
    using numeric_error::numeric_error;
};

// Requested precision could not be certified within the configured ceiling.
struct precision_error : numeric_error {
    using numeric_error::numeric_error;
};

} // namespace stieltjes
