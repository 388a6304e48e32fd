#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsum {

// Euler-Mascheroni constant, 0.57721566490153286060651209008240243...
// (standard value; recomputed by an Euler-Maclaurin oracle in the tests).
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

enum class PrimeSumFamily {
    c2,       // sum_p 1/(p^3 - 1)
    c_omega,  // sum_p 1/(p^2 - 1)
    s_r,      // sum_p log(1 - 1/p) + 1/r - (1/r)(1 - 1/p)^r
    s_omega,  // sum_p log(1 - 1/p) + 1/(p - 1)
};

std::string to_string(PrimeSumFamily family);
PrimeSumFamily parse_prime_sum_family(const std::string& s);

/// Partial sum over primes p <= cutoff plus a certified bound on
/// |true value - partial| from the terms with p > cutoff.
struct PrimeSumValue {
    std::string name;
    std::string formula;
    std::uint64_t cutoff = 0;         // requested P
    std::uint64_t largest_prime = 0;  // largest prime actually summed
    double partial = 0.0;
    double tail_bound = 0.0;
};

/// All primes <= limit, ascending (plain Eratosthenes on a byte array).
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

/// The family summand at one prime.
double prime_sum_term(PrimeSumFamily family, std::uint64_t p, int r = 0);

/// Certified bound on the contribution of primes above `cutoff`.
double prime_sum_tail_bound(PrimeSumFamily family, std::uint64_t cutoff, int r = 0);

PrimeSumValue eval_prime_sum(PrimeSumFamily family, std::uint64_t cutoff, int r = 0);
// Reuses a precomputed ascending prime list; primes above `cutoff` are ignored.
PrimeSumValue eval_prime_sum(PrimeSumFamily family, std::uint64_t cutoff,
                             std::span<const std::uint32_t> primes, int r = 0);

/// Gamma'(r) = (r-1)! (H_{r-1} - gamma) for integer r in [2, 20].
double gamma_prime(int r);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    [[nodiscard]] double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// One named coefficient with its provenance. `exact` is set when the
/// coefficient is rational by construction.
struct ConstantValue {
    std::string name;
    std::string formula;
    std::uint64_t cutoff = 0;  // 0 when no prime sum is involved
    double value = 0.0;
    double tail_bound = 0.0;
    std::optional<Rational> exact;
};

inline constexpr int kConstantSetMinR = 2;
inline constexpr int kConstantSetMaxR = 5;

struct ConstantSet {
    std::uint64_t cutoff = 0;
    std::map<int, ConstantValue> C;            // r / (r-1)!
    std::map<int, ConstantValue> C1;           // r/((r-1)!)^2 (r S_r - Gamma'(r))
    std::map<int, ConstantValue> gamma_prime;  // Gamma'(r)
    std::map<int, PrimeSumValue> S_r;
    PrimeSumValue C2_sum;
    PrimeSumValue C_Omega_sum;
    PrimeSumValue S_Omega_sum;
    ConstantValue C2;
    ConstantValue C_Omega;
    ConstantValue S_Omega;
    ConstantValue K;           // 3/2
    ConstantValue K1;          // (9/4) S_Omega - (3/4) Gamma'(3)
    ConstantValue thm3_coeff;  // K1 + (C2 - 3 C_Omega)/2

    const ConstantValue& c_of(int r) const;
    const ConstantValue& c1_of(int r) const;

    // Deterministic listing used for JSON output.
    [[nodiscard]] std::vector<ConstantValue> all() const;
};

/// Builds every coefficient from prime sums cut at `cutoff` (>= 1000).
ConstantSet build_constant_set(std::uint64_t cutoff);

}  // namespace hsum
