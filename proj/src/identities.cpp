#include "hypersum/identities.hpp"

#include <algorithm>
#include <numeric>

#include "hypersum/checked.hpp"
#include "hypersum/error.hpp"
#include "hypersum/parallel.hpp"

namespace hsum {

namespace {

// Trial-division oracles. Deliberately independent of FactorSieve so the
// brute-force side of every check shares no code with the tables.
std::vector<std::pair<std::uint64_t, int>> trial_factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t omega_trial(std::uint64_t n) {
    return static_cast<std::int64_t>(trial_factor(n).size());
}

std::int64_t big_omega_trial(std::uint64_t n) {
    std::int64_t total = 0;
    for (const auto& [p, e] : trial_factor(n)) total += e;
    return total;
}

std::vector<std::uint64_t> trial_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::uint64_t tau_r_trial(std::uint64_t k, int r) {
    std::uint64_t count = 1;
    for (const auto& [p, e] : trial_factor(k)) {
        count = checked_mul<std::uint64_t>(
            count, static_cast<std::uint64_t>(tau_r_at_prime_power(r, e)), "tau_r(k)");
    }
    return count;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

void check_arity(int r, const char* what) {
    if (r < 2) throw InvalidArgument(std::string(what) + ": r must be >= 2, got " + std::to_string(r));
}

void check_positive(std::uint64_t k, const char* what) {
    if (k < 1) throw InvalidArgument(std::string(what) + ": argument must be >= 1");
}

std::int64_t binomial(int n, int k) {
    std::int64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

IdentityVerdict verdict(std::string identity, std::string argument, std::int64_t lhs, std::int64_t rhs) {
    return {std::move(identity), std::move(argument), lhs, rhs, lhs == rhs};
}

std::string karg(std::uint64_t k, int r) {
    return "k=" + std::to_string(k) + ",r=" + std::to_string(r);
}

}  // namespace

void for_each_ordered_factorization(std::uint64_t k, int r,
                                    const std::function<void(std::span<const std::uint64_t>)>& visit,
                                    std::uint64_t guard) {
    check_positive(k, "for_each_ordered_factorization");
    check_arity(r, "for_each_ordered_factorization");
    const std::uint64_t count = tau_r_trial(k, r);
    if (count > guard) {
        throw ResourceError("ordered factorizations of k=" + std::to_string(k) + " into " +
                            std::to_string(r) + " parts number " + std::to_string(count) +
                            ", above the enumeration guard " + std::to_string(guard));
    }
    const std::vector<std::uint64_t> divisors = trial_divisors(k);
    std::vector<std::uint64_t> tuple(static_cast<std::size_t>(r));

    // Choose n_1 | k, then recurse on k / n_1; the last slot takes the rest.
    std::function<void(std::size_t, std::uint64_t)> fill = [&](std::size_t pos, std::uint64_t rest) {
        if (pos + 1 == tuple.size()) {
            tuple[pos] = rest;
            visit(tuple);
            return;
        }
        for (const std::uint64_t d : divisors) {
            if (d > rest) break;
            if (rest % d != 0) continue;
            tuple[pos] = d;
            fill(pos + 1, rest / d);
        }
    };
    fill(0, k);
}

std::vector<OrderedFactorization> enumerate_ordered_factorizations(std::uint64_t k, int r,
                                                                   std::uint64_t guard) {
    std::vector<OrderedFactorization> out;
    for_each_ordered_factorization(
        k, r, [&](std::span<const std::uint64_t> t) { out.emplace_back(t.begin(), t.end()); }, guard);
    return out;
}

IdentityVerdict check_lemma1(std::uint64_t k, int r, const TableSet& tables) {
    check_positive(k, "check_lemma1");
    tables.require(k, "check_lemma1");
    const FunctionTable& tau = tables.tau(r);

    std::int64_t lhs = 0;
    for_each_ordered_factorization(k, r, [&](std::span<const std::uint64_t> t) {
        std::uint64_t l = 1;
        for (const auto n : t) l = lcm_u64(l, n);
        lhs = checked_add(lhs, omega_trial(l), "lemma1 lhs");
    });
    const std::int64_t rhs = checked_mul<std::int64_t>(tables.small_omega()[k], tau[k], "lemma1 rhs");
    return verdict("lemma1", karg(k, r), lhs, rhs);
}

IdentityVerdict check_inclusion_exclusion(std::uint64_t k, int r, const TableSet& tables) {
    check_positive(k, "check_inclusion_exclusion");
    tables.require(k, "check_inclusion_exclusion");
    const FunctionTable& tau = tables.tau(r);

    // per_m[m-1] = sum over tuples of omega(gcd of the first m coordinates)
    std::vector<std::int64_t> per_m(static_cast<std::size_t>(r), 0);
    for_each_ordered_factorization(k, r, [&](std::span<const std::uint64_t> t) {
        std::uint64_t g = 0;
        for (std::size_t m = 0; m < t.size(); ++m) {
            g = std::gcd(g, t[m]);
            per_m[m] += omega_trial(g);
        }
    });
    std::int64_t lhs = 0;
    for (int m = 1; m <= r; ++m) {
        const std::int64_t term = checked_mul(binomial(r, m), per_m[m - 1], "inclusion-exclusion");
        lhs = (m % 2 == 1) ? checked_add(lhs, term) : checked_sub(lhs, term);
    }
    const std::int64_t rhs = checked_mul<std::int64_t>(tables.small_omega()[k], tau[k], "lemma1 rhs");
    return verdict("inclusion_exclusion", karg(k, r), lhs, rhs);
}

IdentityVerdict check_lcm_sevenfold(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                    const TableSet& tables) {
    if (a < 1 || b < 1 || c < 1) throw InvalidArgument("check_lcm_sevenfold: arguments must be >= 1");
    tables.require(std::max({a, b, c}), "check_lcm_sevenfold");
    const FunctionTable& big_omega = tables.big_omega();

    const std::int64_t lhs = big_omega_trial(lcm_u64(lcm_u64(a, b), c));
    const std::int64_t rhs = std::int64_t{big_omega[a]} + big_omega[b] + big_omega[c] -
                             big_omega[std::gcd(a, b)] - big_omega[std::gcd(a, c)] -
                             big_omega[std::gcd(b, c)] + big_omega[std::gcd(std::gcd(a, b), c)];
    return verdict("lcm_sevenfold",
                   "a=" + std::to_string(a) + ",b=" + std::to_string(b) + ",c=" + std::to_string(c),
                   lhs, rhs);
}

IdentityVerdict check_thm2_convolution(std::uint64_t n, const TableSet& tables) {
    check_positive(n, "check_thm2_convolution");
    tables.require(n, "check_thm2_convolution");

    std::int64_t lhs = 0;
    for_each_ordered_factorization(n, 3, [&](std::span<const std::uint64_t> t) {
        lhs += big_omega_trial(std::gcd(std::gcd(t[0], t[1]), t[2]));
    });

    const FunctionTable& tau3 = tables.tau(3);
    const FunctionTable& indicator = tables.mu_star_bigomega();
    std::int64_t rhs = 0;
    for (std::uint64_t d = 1; d * d * d <= n; ++d) {
        const std::uint64_t cube = d * d * d;
        if (n % cube != 0) continue;
        rhs = checked_add(rhs, checked_mul<std::int64_t>(indicator[d], tau3[n / cube]), "thm2 rhs");
    }
    return verdict("thm2_convolution", "n=" + std::to_string(n), lhs, rhs);
}

IdentityVerdict check_pairgcd_symmetry(std::uint64_t n) {
    check_positive(n, "check_pairgcd_symmetry");
    std::int64_t ab = 0, ac = 0, bc = 0;
    for_each_ordered_factorization(n, 3, [&](std::span<const std::uint64_t> t) {
        ab += big_omega_trial(std::gcd(t[0], t[1]));
        ac += big_omega_trial(std::gcd(t[0], t[2]));
        bc += big_omega_trial(std::gcd(t[1], t[2]));
    });
    IdentityVerdict v = verdict("pairgcd_symmetry", "n=" + std::to_string(n), ab, bc);
    v.pass = (ab == ac) && (ac == bc);
    return v;
}

SuiteBounds SuiteBounds::uniform(std::uint64_t bound) {
    SuiteBounds b;
    b.lemma1_k = bound;
    b.inclusion_exclusion_k = bound;
    b.sevenfold_abc = bound;
    b.thm2_n = bound;
    return b;
}

std::uint64_t SuiteBounds::table_limit() const {
    return std::max({lemma1_k, inclusion_exclusion_k, sevenfold_abc, thm2_n, std::uint64_t{2}});
}

namespace {

// Evaluates check(i, out) for every index i in [first, last); `out` collects
// failing verdicts for that index, and the return value is how many checks
// ran. Failures are merged in index order.
template <typename Check>
SuiteReport run_suite(std::string name, std::uint64_t first, std::uint64_t last, unsigned threads,
                      Check&& check) {
    SuiteReport report;
    report.name = std::move(name);
    if (first >= last) return report;
    const std::uint64_t span = last - first;
    std::vector<std::uint64_t> counts(span, 0);
    std::vector<std::vector<IdentityVerdict>> failures(span);
    detail::parallel_for(first, last, threads, [&](std::uint64_t i) {
        counts[i - first] = check(i, failures[i - first]);
    });
    for (std::uint64_t j = 0; j < span; ++j) {
        report.checked += counts[j];
        report.failed += failures[j].size();
        for (auto& f : failures[j]) {
            if (report.failures.size() < kMaxReportedFailures) report.failures.push_back(std::move(f));
        }
    }
    return report;
}

}  // namespace

std::vector<SuiteReport> run_identity_suites(const SuiteBounds& bounds, const TableSet& tables,
                                             unsigned threads) {
    tables.require(bounds.table_limit(), "run_identity_suites");
    std::vector<SuiteReport> out;

    out.push_back(run_suite("lemma1", 1, bounds.lemma1_k + 1, threads,
                            [&](std::uint64_t k, std::vector<IdentityVerdict>& fails) {
                                for (const int r : bounds.lemma1_r) {
                                    auto v = check_lemma1(k, r, tables);
                                    if (!v) fails.push_back(std::move(v));
                                }
                                return static_cast<std::uint64_t>(bounds.lemma1_r.size());
                            }));

    out.push_back(run_suite("inclusion_exclusion", 1, bounds.inclusion_exclusion_k + 1, threads,
                            [&](std::uint64_t k, std::vector<IdentityVerdict>& fails) {
                                for (const int r : bounds.inclusion_exclusion_r) {
                                    auto v = check_inclusion_exclusion(k, r, tables);
                                    if (!v) fails.push_back(std::move(v));
                                }
                                return static_cast<std::uint64_t>(bounds.inclusion_exclusion_r.size());
                            }));

    // One index per leading coordinate a; every (b, c) with abc <= bound.
    const std::uint64_t abc = bounds.sevenfold_abc;
    out.push_back(run_suite("lcm_sevenfold", 1, abc + 1, threads,
                            [&](std::uint64_t a, std::vector<IdentityVerdict>& fails) {
                                std::uint64_t checked = 0;
                                for (std::uint64_t b = 1; a * b <= abc; ++b) {
                                    for (std::uint64_t c = 1; a * b * c <= abc; ++c) {
                                        auto v = check_lcm_sevenfold(a, b, c, tables);
                                        if (!v) fails.push_back(std::move(v));
                                        ++checked;
                                    }
                                }
                                return checked;
                            }));

    out.push_back(run_suite("thm2_convolution", 1, bounds.thm2_n + 1, threads,
                            [&](std::uint64_t n, std::vector<IdentityVerdict>& fails) {
                                auto v = check_thm2_convolution(n, tables);
                                if (!v) fails.push_back(std::move(v));
                                return std::uint64_t{1};
                            }));
    return out;
}

}  // namespace hsum
