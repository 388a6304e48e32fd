#pragma once

#include <stdexcept>
#include <string>

namespace hsum {

// Bad input: out-of-range bound, mismatched table limits, unknown names.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exact integer arithmetic would have wrapped.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// A size guard (enumeration count, table ceiling, allocation) was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal cross-check disagreed (brute vs fast, oracle vs table).
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hsum
