#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

// Test-only oracles. None of these touch the library's sieves or tables.
namespace oracle {

inline std::vector<bool> eratosthenes(std::uint64_t n) {
    std::vector<bool> prime(n + 1, true);
    prime[0] = false;
    if (n >= 1) prime[1] = false;
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (!prime[i]) continue;
        for (std::uint64_t j = i * i; j <= n; j += i) prime[j] = false;
    }
    return prime;
}

inline int big_omega(std::uint64_t n) {
    int k = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            n /= p;
            ++k;
        }
    }
    return k + (n > 1 ? 1 : 0);
}

inline int small_omega(std::uint64_t n) {
    int k = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) ++k;
        while (n % p == 0) n /= p;
    }
    return k + (n > 1 ? 1 : 0);
}

inline int mobius(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return n > 1 ? -sign : sign;
}

// Number of ordered r-tuples of positive integers with product exactly n.
inline std::int64_t count_ordered(std::uint64_t n, int r) {
    if (r == 1) return 1;
    std::int64_t total = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d == 0) total += count_ordered(n / d, r - 1);
    }
    return total;
}

}  // namespace oracle
