#pragma once

#include <stdexcept>
#include <string>

namespace slicegf {

// Bad caller data: out-of-range digits, malformed files, mismatched operands.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Generator matrix whose rank is below its declared dimension.
class RankDeficientError : public InputError {
public:
    using InputError::InputError;
};

// Something that must never happen on valid input did happen.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The brute-force oracle refuses work above its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace slicegf
