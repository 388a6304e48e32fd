#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsum {

class TableCache;

// Sieve and table ceiling used when the caller does not override it.
// Memory per entry: 4 bytes for the sieve, 4 bytes per FunctionTable,
// 8 bytes for a prefix-sum array. At 10^8 a full TableSet needs ~3.2 GB.
inline constexpr std::uint64_t kDefaultTableCeiling = 100'000'000;

/// Smallest-prime-factor table on [2, limit].
class FactorSieve {
public:
    FactorSieve() = default;

    [[nodiscard]] std::uint32_t limit() const noexcept { return limit_; }
    [[nodiscard]] std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }
    [[nodiscard]] bool is_prime(std::uint64_t n) const noexcept {
        return n >= 2 && n <= limit_ && spf_[n] == n;
    }
    // Indexed by n; entries 0 and 1 are zero.
    [[nodiscard]] std::span<const std::uint32_t> data() const noexcept { return spf_; }

private:
    friend FactorSieve build_spf_sieve(std::uint64_t, std::uint64_t);
    std::uint32_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
};

struct PrimePower {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Strictly increasing primes, exponents >= 1. Empty for n = 1.
using Factorization = std::vector<PrimePower>;

/// Linear sieve. Throws InvalidArgument for N < 2 or N above `ceiling`,
/// ResourceError if the allocation fails.
FactorSieve build_spf_sieve(std::uint64_t limit, std::uint64_t ceiling = kDefaultTableCeiling);

Factorization factorize(std::uint64_t n, const FactorSieve& sieve);

/// binomial(r+m-1, m): the value of tau_r at any prime power p^m.
std::int64_t tau_r_at_prime_power(int r, int m);

enum class FunctionKind { big_omega, small_omega, mobius, tau_r, mu_star_bigomega };

struct FunctionName {
    FunctionKind kind = FunctionKind::big_omega;
    int r = 0;  // only meaningful for tau_r

    // "big_omega", "small_omega", "mobius", "tau_3", "mu_star_bigomega"
    [[nodiscard]] std::string label() const;
    static FunctionName parse(const std::string& label);
    static FunctionName tau(int r) { return {FunctionKind::tau_r, r}; }

    friend bool operator==(const FunctionName&, const FunctionName&) = default;
};

/// Exact integer values of an arithmetic function on [1, limit].
class FunctionTable {
public:
    using value_type = std::int32_t;

    FunctionTable() = default;
    // `values` is indexed by n and has size limit+1; values[0] is ignored.
    FunctionTable(std::string name, std::vector<value_type> values);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::uint32_t limit() const noexcept {
        return values_.empty() ? 0 : static_cast<std::uint32_t>(values_.size() - 1);
    }
    [[nodiscard]] value_type operator[](std::uint64_t n) const { return values_[n]; }
    value_type at(std::uint64_t n) const;

    // values()[i] is the value at n = i + 1.
    [[nodiscard]] std::span<const value_type> values() const noexcept {
        return std::span<const value_type>(values_).subspan(values_.empty() ? 0 : 1);
    }

    // P[0] = 0, P[n] = sum_{k<=n} f(k); checked 64-bit accumulation.
    [[nodiscard]] std::vector<std::int64_t> prefix_sums() const;

    // Copy with one entry replaced. Used for fault injection in checks.
    [[nodiscard]] FunctionTable with_value(std::uint64_t n, value_type v) const;

    friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

private:
    std::string name_;
    std::vector<value_type> values_;
};

/// Tabulate `name` on [1, limit] from the sieve. tau_r tables are built
/// multiplicatively; mu_star_bigomega uses the prime-power indicator.
FunctionTable build_table(const FunctionName& name, std::uint64_t limit, const FactorSieve& sieve);

/// (f*g)(n) = sum_{de=n} f(d) g(e), exact.
FunctionTable dirichlet_convolve(const FunctionTable& f, const FunctionTable& g,
                                 std::string name = {});

/// All-ones table, the unit of the divisor-sum convolutions.
FunctionTable ones_table(std::uint64_t limit);

/// mu * Omega computed the long way, by explicit convolution of the
/// Mobius and big-Omega tables.
FunctionTable build_mu_star_bigomega_by_convolution(std::uint64_t limit, const FactorSieve& sieve);

/// Immutable bundle of the tables the summation paths read.
///
/// Always holds big_omega, small_omega, mu_star_bigomega and tau_2, tau_3
/// (plus any extra tau_r requested) on [1, limit], and the tau_3 prefix sums.
class TableSet {
public:
    struct Options {
        std::uint64_t limit = 0;
        std::vector<int> extra_r;
        std::uint64_t ceiling = kDefaultTableCeiling;
        const TableCache* cache = nullptr;
    };

    TableSet() = default;
    static TableSet build(const Options& options);
    static TableSet build(std::uint64_t limit, std::vector<int> extra_r = {}) {
        Options o;
        o.limit = limit;
        o.extra_r = std::move(extra_r);
        return build(o);
    }

    [[nodiscard]] std::uint32_t limit() const noexcept { return limit_; }
    [[nodiscard]] const FactorSieve& sieve() const noexcept { return sieve_; }
    [[nodiscard]] const FunctionTable& big_omega() const noexcept { return big_omega_; }
    [[nodiscard]] const FunctionTable& small_omega() const noexcept { return small_omega_; }
    [[nodiscard]] const FunctionTable& mu_star_bigomega() const noexcept { return mu_star_bigomega_; }
    [[nodiscard]] bool has_tau(int r) const { return tau_.count(r) != 0; }
    const FunctionTable& tau(int r) const;
    [[nodiscard]] std::span<const std::int64_t> tau3_prefix() const noexcept { return tau3_prefix_; }

    // Throws InvalidArgument unless limit() >= x.
    void require(std::uint64_t x, const char* what) const;

    // Copy with one table swapped (matched by name). Used to inject faults.
    [[nodiscard]] TableSet with_table(FunctionTable replacement) const;

private:
    std::uint32_t limit_ = 0;
    FactorSieve sieve_;
    FunctionTable big_omega_;
    FunctionTable small_omega_;
    FunctionTable mu_star_bigomega_;
    std::map<int, FunctionTable> tau_;
    std::vector<std::int64_t> tau3_prefix_;
};

}  // namespace hsum
