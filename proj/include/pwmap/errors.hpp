#pragma once

#include <stdexcept>
#include <string>

namespace pwmap {

// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation is undefined for a = 0 or b = 0.
class DegenerateParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computed value left its mathematically guaranteed range by more than rounding noise.
class NumericIntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SimplexViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// b = g(a) left [0, 1] somewhere on a sweep grid.
class RuleRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace pwmap
