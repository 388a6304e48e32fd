#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "hypersum/error.hpp"

namespace hsum {

template <typename T>
[[nodiscard]] inline T checked_add(T a, T b, const char* what = "addition") {
    T out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw OverflowError(std::string("integer overflow in ") + what);
    }
    return out;
}

template <typename T>
[[nodiscard]] inline T checked_sub(T a, T b, const char* what = "subtraction") {
    T out;
    if (__builtin_sub_overflow(a, b, &out)) {
        throw OverflowError(std::string("integer overflow in ") + what);
    }
    return out;
}

template <typename T>
[[nodiscard]] inline T checked_mul(T a, T b, const char* what = "multiplication") {
    T out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw OverflowError(std::string("integer overflow in ") + what);
    }
    return out;
}

template <typename To, typename From>
[[nodiscard]] inline To checked_narrow(From v, const char* what = "narrowing") {
    To out;
    if (__builtin_add_overflow(v, From{0}, &out)) {
        throw OverflowError(std::string("value does not fit in ") + what);
    }
    return out;
}

// Largest r with r*r <= n.
[[nodiscard]] inline std::uint64_t isqrt(std::uint64_t n) {
    std::uint64_t r = 0;
    for (std::uint64_t bit = std::uint64_t{1} << 31; bit != 0; bit >>= 1) {
        const std::uint64_t c = r | bit;
        if (c * c <= n) r = c;
    }
    return r;
}

// Largest r with r*r*r <= n.
[[nodiscard]] inline std::uint64_t icbrt(std::uint64_t n) {
    std::uint64_t r = 0;
    for (std::uint64_t bit = std::uint64_t{1} << 21; bit != 0; bit >>= 1) {
        const std::uint64_t c = r | bit;
        if (c * c * c <= n) r = c;
    }
    return r;
}

}  // namespace hsum
