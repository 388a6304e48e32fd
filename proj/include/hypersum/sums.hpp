#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypersum/arith_core.hpp"

namespace hsum {

// Brute-force guards. Exceeding one is a ResourceError, never a truncation.
inline constexpr std::uint64_t kBruteTupleGuard = 100'000'000;
inline constexpr std::uint64_t kBruteTripleMaxX = 1'000'000;

enum class SumKind {
    omega_lcm,           // sum_{n_1...n_r <= x} omega(lcm)
    bigomega_gcd3,       // sum_{abc <= x} Omega((a,b,c))
    bigomega_lcm3,       // sum_{abc <= x} Omega([a,b,c])
    weighted_gcd_pairs,  // sum_{n <= x} (1/n) sum_{ab=n} Omega((a,b))
    bigomega_tau3,       // sum_{n <= x} Omega(n) tau_3(n)
    bigomega_pairgcd3,   // sum_{abc <= x} Omega((a,b))
};

enum class Method { brute, fast };

std::string to_string(SumKind kind);
std::string to_string(Method method);
SumKind parse_sum_kind(const std::string& s);
Method parse_method(const std::string& s);

/// Exact value of an integer-valued hyperbolic sum.
struct SumResult {
    SumKind kind = SumKind::omega_lcm;
    std::uint64_t x = 0;
    int r = 0;  // arity for omega_lcm, 3 for the triple sums, 2 for pair sums
    std::int64_t value = 0;
    Method method = Method::fast;
};

/// sum_{n<=x} g(n)/n with g(n) = sum_{ab=n} Omega((a,b)).
///
/// `weights` holds g(1..x) exactly (weights[n-1] = g(n)); two results
/// denote the same rational number iff their weights agree. When the
/// reduced fraction fits in 128 bits `exact` is set and numerator /
/// denominator hold it; past that the value is only available as the
/// compensated floating sum, whose rounding error is at most `error_bound`.
struct WeightedSum {
    std::uint64_t x = 0;
    Method method = Method::fast;
    std::vector<std::int64_t> weights;
    bool exact = false;
    __int128 numerator = 0;
    __int128 denominator = 1;
    double value = 0.0;
    double error_bound = 0.0;

    // "p/q" when exact, otherwise the float with 17 significant digits.
    [[nodiscard]] std::string render() const;
};

/// Upper bound on the number of ordered r-tuples with product <= x:
/// x (1 + ln x)^(r-1), by induction on r.
double tuple_count_bound(std::uint64_t x, int r);

SumResult sum_omega_lcm_brute(std::uint64_t x, int r, unsigned threads = 1);
SumResult sum_omega_lcm_fast(std::uint64_t x, int r, const TableSet& tables);

std::int64_t summatory_tau3(std::uint64_t y, const TableSet& tables);

SumResult sum_bigomega_gcd3_brute(std::uint64_t x, unsigned threads = 1);
SumResult sum_bigomega_gcd3_fast(std::uint64_t x, const TableSet& tables);

SumResult sum_bigomega_pairgcd_in_triples_brute(std::uint64_t x, unsigned threads = 1);
SumResult sum_bigomega_pairgcd_in_triples(std::uint64_t x, const TableSet& tables);

/// g(n) = sum_{ab=n} Omega((a,b)) for n = 1..x, by direct pair enumeration.
std::vector<std::int64_t> pair_gcd_weights_brute(std::uint64_t x);
/// Same, as sum_{d^2 m = n} (mu*Omega)(d) tau_2(m).
std::vector<std::int64_t> pair_gcd_weights_fast(std::uint64_t x, const TableSet& tables);

WeightedSum weighted_pairgcd_sum_brute(std::uint64_t x);
WeightedSum weighted_pairgcd_sum(std::uint64_t x, const TableSet& tables);

SumResult sum_bigomega_lcm3_brute(std::uint64_t x, unsigned threads = 1);
SumResult sum_bigomega_lcm3_fast(std::uint64_t x, const TableSet& tables);

SumResult sum_bigomega_tau3_brute(std::uint64_t x, unsigned threads = 1);
SumResult sum_bigomega_tau3(std::uint64_t x, const TableSet& tables);

/// Dispatch on kind/method for the integer-valued kinds.
SumResult compute_sum(SumKind kind, Method method, std::uint64_t x, int r, const TableSet* tables,
                      unsigned threads = 1);

}  // namespace hsum
