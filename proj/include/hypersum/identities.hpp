#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hypersum/arith_core.hpp"

namespace hsum {

// Ceiling on tau_r(k) for a single enumeration.
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

using OrderedFactorization = std::vector<std::uint64_t>;

/// Outcome of one pointwise identity check. `lhs` is always the
/// brute-force side, `rhs` the closed form read from tables.
struct IdentityVerdict {
    std::string identity;
    std::string argument;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool pass = false;

    explicit operator bool() const noexcept { return pass; }
};

/// Calls visit(tuple) once per ordered r-tuple with product k, by recursive
/// divisor splitting. Throws ResourceError if tau_r(k) > guard.
void for_each_ordered_factorization(std::uint64_t k, int r,
                                    const std::function<void(std::span<const std::uint64_t>)>& visit,
                                    std::uint64_t guard = kEnumerationGuard);

std::vector<OrderedFactorization> enumerate_ordered_factorizations(
    std::uint64_t k, int r, std::uint64_t guard = kEnumerationGuard);

// sum over ordered factorizations of omega(lcm) == omega(k) tau_r(k)
IdentityVerdict check_lemma1(std::uint64_t k, int r, const TableSet& tables);

// sum_{m=1}^{r} (-1)^{m-1} C(r,m) sum_{n_1...n_r=k} omega(gcd(n_1..n_m)) == omega(k) tau_r(k)
IdentityVerdict check_inclusion_exclusion(std::uint64_t k, int r, const TableSet& tables);

// Omega(lcm(a,b,c)) == Omega(a)+Omega(b)+Omega(c) - Omega((a,b)) - Omega((a,c)) - Omega((b,c)) + Omega((a,b,c))
IdentityVerdict check_lcm_sevenfold(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                    const TableSet& tables);

// sum_{abc=n} Omega((a,b,c)) == sum_{d^3 m = n} (mu*Omega)(d) tau_3(m)
IdentityVerdict check_thm2_convolution(std::uint64_t n, const TableSet& tables);

// sum_{abc=n} Omega((a,b)) == sum Omega((a,c)) == sum Omega((b,c)).
// lhs is the (a,b) sum, rhs the (b,c) sum; pass requires all three equal.
IdentityVerdict check_pairgcd_symmetry(std::uint64_t n);

struct SuiteBounds {
    std::uint64_t lemma1_k = 10'000;
    std::vector<int> lemma1_r = {2, 3, 4, 5};
    std::uint64_t inclusion_exclusion_k = 2'000;
    std::vector<int> inclusion_exclusion_r = {2, 3};
    std::uint64_t sevenfold_abc = 10'000;
    std::uint64_t thm2_n = 10'000;

    // Every suite bound set to `bound`.
    static SuiteBounds uniform(std::uint64_t bound);
    // Table limit the suites read up to.
    [[nodiscard]] std::uint64_t table_limit() const;
};

struct SuiteReport {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::vector<IdentityVerdict> failures;  // first few, in argument order
};

inline constexpr std::size_t kMaxReportedFailures = 20;

/// Runs the four identity suites. Verdict order is deterministic
/// regardless of `threads`.
std::vector<SuiteReport> run_identity_suites(const SuiteBounds& bounds, const TableSet& tables,
                                             unsigned threads = 1);

}  // namespace hsum
