#include "hypersum/arith_core.hpp"

#include <new>
#include <numeric>

#include "hypersum/checked.hpp"
#include "hypersum/error.hpp"
#include "hypersum/table_cache.hpp"

namespace hsum {

namespace {

std::uint32_t checked_limit(std::uint64_t limit, std::uint64_t ceiling, const char* what) {
    if (limit > ceiling) {
        throw InvalidArgument(std::string(what) + ": limit " + std::to_string(limit) +
                              " exceeds the configured ceiling " + std::to_string(ceiling));
    }
    if (limit > 0xFFFFFFFEull) {
        throw InvalidArgument(std::string(what) + ": limit must fit in 32 bits");
    }
    return static_cast<std::uint32_t>(limit);
}

template <typename T>
std::vector<T> allocate(std::uint64_t count, const char* what) {
    try {
        return std::vector<T>(count);
    } catch (const std::bad_alloc&) {
        throw ResourceError(std::string("cannot allocate ") + what + " of " +
                            std::to_string(count) + " entries (" +
                            std::to_string(count * sizeof(T)) + " bytes)");
    } catch (const std::length_error&) {
        throw ResourceError(std::string("cannot allocate ") + what + " of " +
                            std::to_string(count) + " entries");
    }
}

void require_sieve_covers(const FactorSieve& sieve, std::uint64_t limit, const char* what) {
    if (limit > sieve.limit()) {
        throw InvalidArgument(std::string(what) + ": limit " + std::to_string(limit) +
                              " exceeds sieve limit " + std::to_string(sieve.limit()));
    }
}

}  // namespace

FactorSieve build_spf_sieve(std::uint64_t limit, std::uint64_t ceiling) {
    if (limit < 2) {
        throw InvalidArgument("build_spf_sieve: N must be >= 2, got " + std::to_string(limit));
    }
    const std::uint32_t n_max = checked_limit(limit, ceiling, "build_spf_sieve");

    FactorSieve sieve;
    sieve.limit_ = n_max;
    sieve.spf_ = allocate<std::uint32_t>(std::uint64_t{n_max} + 1, "smallest-prime-factor sieve");

    std::vector<std::uint32_t> primes;
    auto& spf = sieve.spf_;
    for (std::uint64_t i = 2; i <= n_max; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        // Each composite is written once, by its smallest prime factor.
        for (const std::uint32_t p : primes) {
            const std::uint64_t m = i * p;
            if (p > spf[i] || m > n_max) break;
            spf[m] = p;
        }
    }
    return sieve;
}

Factorization factorize(std::uint64_t n, const FactorSieve& sieve) {
    if (n < 1 || n > sieve.limit()) {
        throw InvalidArgument("factorize: n = " + std::to_string(n) + " outside [1, " +
                              std::to_string(sieve.limit()) + "]");
    }
    Factorization out;
    auto m = static_cast<std::uint32_t>(n);
    while (m > 1) {
        const std::uint32_t p = sieve.spf(m);
        std::uint32_t e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

std::int64_t tau_r_at_prime_power(int r, int m) {
    if (r < 2) throw InvalidArgument("tau_r_at_prime_power: r must be >= 2");
    if (m < 0) throw InvalidArgument("tau_r_at_prime_power: m must be >= 0");
    // C(r+m-1, m) = prod_{i=1..m} (r-1+i)/i; every partial product is itself
    // a binomial coefficient, so the division is exact.
    std::int64_t c = 1;
    for (std::int64_t i = 1; i <= m; ++i) {
        const std::int64_t num = r - 1 + i;
        const std::int64_t g = std::gcd(c, i);
        c = checked_mul(c / g, num / (i / g), "tau_r_at_prime_power");
    }
    return c;
}

std::string FunctionName::label() const {
    switch (kind) {
        case FunctionKind::big_omega: return "big_omega";
        case FunctionKind::small_omega: return "small_omega";
        case FunctionKind::mobius: return "mobius";
        case FunctionKind::tau_r: return "tau_" + std::to_string(r);
        case FunctionKind::mu_star_bigomega: return "mu_star_bigomega";
    }
    return "unknown";
}

FunctionName FunctionName::parse(const std::string& label) {
    if (label == "big_omega") return {FunctionKind::big_omega};
    if (label == "small_omega") return {FunctionKind::small_omega};
    if (label == "mobius") return {FunctionKind::mobius};
    if (label == "mu_star_bigomega") return {FunctionKind::mu_star_bigomega};
    if (label.rfind("tau_", 0) == 0 && label.size() > 4) {
        try {
            std::size_t used = 0;
            const int r = std::stoi(label.substr(4), &used);
            if (used == label.size() - 4) return tau(r);
        } catch (const std::exception&) {
        }
    }
    throw InvalidArgument("unknown function name '" + label + "'");
}

FunctionTable::FunctionTable(std::string name, std::vector<value_type> values)
    : name_(std::move(name)), values_(std::move(values)) {
    if (!values_.empty()) values_[0] = 0;
}

FunctionTable::value_type FunctionTable::at(std::uint64_t n) const {
    if (n < 1 || n > limit()) {
        throw InvalidArgument(name_ + ": index " + std::to_string(n) + " outside [1, " +
                              std::to_string(limit()) + "]");
    }
    return values_[n];
}

std::vector<std::int64_t> FunctionTable::prefix_sums() const {
    auto out = allocate<std::int64_t>(values_.size(), "prefix-sum array");
    std::int64_t acc = 0;
    for (std::size_t n = 1; n < values_.size(); ++n) {
        acc = checked_add<std::int64_t>(acc, values_[n], "prefix sum");
        out[n] = acc;
    }
    return out;
}

FunctionTable FunctionTable::with_value(std::uint64_t n, value_type v) const {
    at(n);
    FunctionTable copy = *this;
    copy.values_[n] = v;
    return copy;
}

FunctionTable build_table(const FunctionName& name, std::uint64_t limit, const FactorSieve& sieve) {
    if (name.kind == FunctionKind::tau_r && name.r < 2) {
        throw InvalidArgument("build_table: tau_r needs r >= 2, got " + std::to_string(name.r));
    }
    if (limit < 1) throw InvalidArgument("build_table: limit must be >= 1");
    require_sieve_covers(sieve, limit, "build_table");

    const auto n_max = static_cast<std::uint32_t>(limit);
    auto v = allocate<FunctionTable::value_type>(std::uint64_t{n_max} + 1, "function table");

    switch (name.kind) {
        case FunctionKind::big_omega:
            for (std::uint32_t n = 2; n <= n_max; ++n) v[n] = v[n / sieve.spf(n)] + 1;
            break;
        case FunctionKind::small_omega:
            for (std::uint32_t n = 2; n <= n_max; ++n) {
                const std::uint32_t p = sieve.spf(n);
                const std::uint32_t m = n / p;
                v[n] = v[m] + ((m > 1 && sieve.spf(m) == p) ? 0 : 1);
            }
            break;
        case FunctionKind::mobius:
            v[1] = 1;
            for (std::uint32_t n = 2; n <= n_max; ++n) {
                const std::uint32_t p = sieve.spf(n);
                const std::uint32_t m = n / p;
                v[n] = (m > 1 && sieve.spf(m) == p) ? 0 : -v[m];
            }
            break;
        case FunctionKind::tau_r: {
            // Per-prime-power factor, indexed by exponent.
            std::vector<std::int64_t> at_power(40);
            for (int e = 0; e < 40; ++e) {
                try {
                    at_power[e] = tau_r_at_prime_power(name.r, e);
                } catch (const OverflowError&) {
                    at_power[e] = -1;
                }
            }
            v[1] = 1;
            for (std::uint32_t n = 2; n <= n_max; ++n) {
                const std::uint32_t p = sieve.spf(n);
                std::uint32_t m = n;
                int e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                if (at_power[e] < 0) throw OverflowError("build_table: tau_r(p^m) overflow");
                v[n] = checked_narrow<FunctionTable::value_type>(
                    checked_mul<std::int64_t>(v[m], at_power[e], "tau_r table"), "tau_r table entry");
            }
            break;
        }
        case FunctionKind::mu_star_bigomega:
            // 1 exactly on prime powers p^k, k >= 1.
            for (std::uint32_t n = 2; n <= n_max; ++n) {
                const std::uint32_t p = sieve.spf(n);
                std::uint32_t m = n;
                while (m % p == 0) m /= p;
                v[n] = (m == 1) ? 1 : 0;
            }
            break;
    }
    return FunctionTable(name.label(), std::move(v));
}

FunctionTable dirichlet_convolve(const FunctionTable& f, const FunctionTable& g, std::string name) {
    if (f.limit() != g.limit()) {
        throw InvalidArgument("dirichlet_convolve: limits differ (" + std::to_string(f.limit()) +
                              " vs " + std::to_string(g.limit()) + ")");
    }
    const std::uint64_t n_max = f.limit();
    auto acc = allocate<std::int64_t>(n_max + 1, "convolution accumulator");
    for (std::uint64_t d = 1; d <= n_max; ++d) {
        const std::int64_t fd = f[d];
        if (fd == 0) continue;
        for (std::uint64_t e = 1, n = d; n <= n_max; ++e, n += d) {
            acc[n] = checked_add(acc[n], checked_mul<std::int64_t>(fd, g[e], "convolution"),
                                 "convolution");
        }
    }
    std::vector<FunctionTable::value_type> out(n_max + 1);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        out[n] = checked_narrow<FunctionTable::value_type>(acc[n], "convolution entry");
    }
    if (name.empty()) name = "(" + f.name() + "*" + g.name() + ")";
    return FunctionTable(std::move(name), std::move(out));
}

FunctionTable ones_table(std::uint64_t limit) {
    std::vector<FunctionTable::value_type> v(limit + 1, 1);
    return FunctionTable("ones", std::move(v));
}

FunctionTable build_mu_star_bigomega_by_convolution(std::uint64_t limit, const FactorSieve& sieve) {
    return dirichlet_convolve(build_table({FunctionKind::mobius}, limit, sieve),
                              build_table({FunctionKind::big_omega}, limit, sieve),
                              "mu_star_bigomega");
}

TableSet TableSet::build(const Options& options) {
    const std::uint64_t limit = options.limit < 2 ? 2 : options.limit;
    TableSet set;
    set.sieve_ = build_spf_sieve(limit, options.ceiling);
    set.limit_ = set.sieve_.limit();

    auto make = [&](const FunctionName& name) {
        if (options.cache == nullptr) return build_table(name, limit, set.sieve_);
        return options.cache->load_or_build(name.label(), limit,
                                            [&] { return build_table(name, limit, set.sieve_); });
    };

    set.big_omega_ = make({FunctionKind::big_omega});
    set.small_omega_ = make({FunctionKind::small_omega});
    set.mu_star_bigomega_ = make({FunctionKind::mu_star_bigomega});
    std::vector<int> rs = {2, 3};
    rs.insert(rs.end(), options.extra_r.begin(), options.extra_r.end());
    for (const int r : rs) {
        if (set.tau_.count(r) == 0) set.tau_.emplace(r, make(FunctionName::tau(r)));
    }
    set.tau3_prefix_ = set.tau_.at(3).prefix_sums();
    return set;
}

const FunctionTable& TableSet::tau(int r) const {
    const auto it = tau_.find(r);
    if (it == tau_.end()) {
        throw InvalidArgument("TableSet: no tau_" + std::to_string(r) + " table was built");
    }
    return it->second;
}

void TableSet::require(std::uint64_t x, const char* what) const {
    if (x > limit_) {
        throw InvalidArgument(std::string(what) + ": x = " + std::to_string(x) +
                              " exceeds table limit " + std::to_string(limit_));
    }
}

TableSet TableSet::with_table(FunctionTable replacement) const {
    TableSet copy = *this;
    const std::string& name = replacement.name();
    if (replacement.limit() != limit_) {
        throw InvalidArgument("TableSet::with_table: limit mismatch for " + name);
    }
    if (name == big_omega_.name()) {
        copy.big_omega_ = std::move(replacement);
    } else if (name == small_omega_.name()) {
        copy.small_omega_ = std::move(replacement);
    } else if (name == mu_star_bigomega_.name()) {
        copy.mu_star_bigomega_ = std::move(replacement);
    } else {
        const FunctionName parsed = FunctionName::parse(name);
        if (parsed.kind != FunctionKind::tau_r || !has_tau(parsed.r)) {
            throw InvalidArgument("TableSet::with_table: no table named " + name);
        }
        copy.tau_[parsed.r] = std::move(replacement);
        if (parsed.r == 3) copy.tau3_prefix_ = copy.tau_.at(3).prefix_sums();
    }
    return copy;
}

}  // namespace hsum
