#include "hypersum/sums.hpp"

#include <cmath>
#include <numeric>

#include "hypersum/checked.hpp"
#include "hypersum/compensated.hpp"
#include "hypersum/error.hpp"
#include "hypersum/format.hpp"
#include "hypersum/parallel.hpp"

namespace hsum {

namespace {

// Omega / omega on [0, x] by additive Eratosthenes counting: every prime
// power p^k <= x adds one to each of its multiples. Shares nothing with the
// smallest-prime-factor tables, so the brute paths stay independent.
std::vector<std::uint8_t> eratosthenes_counts(std::uint64_t x, bool with_multiplicity) {
    std::vector<std::uint8_t> count(x + 1, 0);
    for (std::uint64_t p = 2; p <= x; ++p) {
        if (count[p] != 0) continue;  // a smaller prime divides p
        for (std::uint64_t pk = p; pk <= x; pk *= p) {
            for (std::uint64_t m = pk; m <= x; m += pk) ++count[m];
            if (!with_multiplicity || pk > x / p) break;
        }
    }
    return count;
}

void require_x(std::uint64_t x, const char* what) {
    if (x < 1) throw InvalidArgument(std::string(what) + ": x must be >= 1");
}

void require_triple_guard(std::uint64_t x, const char* what) {
    require_x(x, what);
    if (x > kBruteTripleMaxX) {
        throw ResourceError(std::string(what) + ": x = " + std::to_string(x) +
                            " exceeds the brute-force guard " + std::to_string(kBruteTripleMaxX));
    }
}

// sum over a <= x of term(a, b, c) for all abc <= x, parallel over a.
template <typename Term>
std::int64_t triple_sum(std::uint64_t x, unsigned threads, Term&& term) {
    return detail::parallel_sum(1, x + 1, threads, [&](std::uint64_t a) {
        std::int64_t acc = 0;
        for (std::uint64_t b = 1; a * b <= x; ++b) {
            const std::uint64_t ab = a * b;
            for (std::uint64_t c = 1; ab * c <= x; ++c) acc += term(a, b, c);
        }
        return acc;
    });
}

WeightedSum finish_weighted(std::uint64_t x, Method method, std::vector<std::int64_t> weights) {
    WeightedSum out;
    out.x = x;
    out.method = method;

    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (weights[n - 1] != 0) sum.add(static_cast<double>(weights[n - 1]) / static_cast<double>(n));
    }
    out.value = sum.value();
    // Each quotient is rounded once (u |t|), then summed.
    out.error_bound = sum.rounding_bound() + (std::numeric_limits<double>::epsilon() / 2) * sum.abs_total();

    // Exact fraction while it fits in 128 bits.
    using u128 = unsigned __int128;
    u128 num = 0, den = 1;
    bool exact = true;
    auto gcd128 = [](u128 a, u128 b) {
        while (b != 0) {
            const u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    for (std::uint64_t n = 1; n <= x && exact; ++n) {
        const auto w = static_cast<u128>(weights[n - 1]);
        if (w == 0) continue;
        const u128 g = gcd128(den, n);
        u128 l, a_scaled, w_scaled, total;
        if (__builtin_mul_overflow(den / g, static_cast<u128>(n), &l) ||
            __builtin_mul_overflow(num, l / den, &a_scaled) ||
            __builtin_mul_overflow(w, l / n, &w_scaled) ||
            __builtin_add_overflow(a_scaled, w_scaled, &total) ||
            total > (~u128{0} >> 1) || l > (~u128{0} >> 1)) {
            exact = false;
            break;
        }
        const u128 h = gcd128(total, l);
        num = total / h;
        den = l / h;
    }
    out.exact = exact;
    if (exact) {
        out.numerator = static_cast<__int128>(num);
        out.denominator = static_cast<__int128>(den);
    }
    out.weights = std::move(weights);
    return out;
}

}  // namespace

std::string to_string(SumKind kind) {
    switch (kind) {
        case SumKind::omega_lcm: return "omega_lcm";
        case SumKind::bigomega_gcd3: return "bigomega_gcd3";
        case SumKind::bigomega_lcm3: return "bigomega_lcm3";
        case SumKind::weighted_gcd_pairs: return "weighted_gcd_pairs";
        case SumKind::bigomega_tau3: return "bigomega_tau3";
        case SumKind::bigomega_pairgcd3: return "bigomega_pairgcd3";
    }
    return "unknown";
}

std::string to_string(Method method) { return method == Method::brute ? "brute" : "fast"; }

SumKind parse_sum_kind(const std::string& s) {
    for (const SumKind k : {SumKind::omega_lcm, SumKind::bigomega_gcd3, SumKind::bigomega_lcm3,
                            SumKind::weighted_gcd_pairs, SumKind::bigomega_tau3,
                            SumKind::bigomega_pairgcd3}) {
        if (to_string(k) == s) return k;
    }
    throw InvalidArgument("unknown sum kind '" + s + "'");
}

Method parse_method(const std::string& s) {
    if (s == "brute") return Method::brute;
    if (s == "fast") return Method::fast;
    throw InvalidArgument("unknown method '" + s + "'");
}

std::string WeightedSum::render() const {
    if (exact) return format_int128(numerator) + "/" + format_int128(denominator);
    return format_double(value);
}

double tuple_count_bound(std::uint64_t x, int r) {
    return static_cast<double>(x) * std::pow(1.0 + std::log(static_cast<double>(x)), r - 1);
}

SumResult sum_omega_lcm_brute(std::uint64_t x, int r, unsigned threads) {
    require_x(x, "sum_omega_lcm_brute");
    if (r < 2) throw InvalidArgument("sum_omega_lcm_brute: r must be >= 2");
    const double bound = tuple_count_bound(x, r);
    if (bound > static_cast<double>(kBruteTupleGuard)) {
        throw ResourceError("sum_omega_lcm_brute: up to " + std::to_string(static_cast<std::uint64_t>(bound)) +
                            " tuples for x=" + std::to_string(x) + ", r=" + std::to_string(r) +
                            " exceeds the guard " + std::to_string(kBruteTupleGuard));
    }
    const auto omega = eratosthenes_counts(x, false);

    // Depth-first over tuples with product <= x; the last coordinate is a
    // plain loop. `room` is x divided by the product so far.
    auto walk = [&](auto&& self, int remaining, std::uint64_t room, std::uint64_t lcm) -> std::int64_t {
        std::int64_t acc = 0;
        if (remaining == 1) {
            for (std::uint64_t n = 1; n <= room; ++n) acc += omega[lcm / std::gcd(lcm, n) * n];
            return acc;
        }
        for (std::uint64_t n = 1; n <= room; ++n) {
            acc = checked_add(acc, self(self, remaining - 1, room / n, lcm / std::gcd(lcm, n) * n));
        }
        return acc;
    };
    const std::int64_t value = detail::parallel_sum(1, x + 1, threads, [&](std::uint64_t a) {
        return walk(walk, r - 1, x / a, a);
    });
    return {SumKind::omega_lcm, x, r, value, Method::brute};
}

SumResult sum_omega_lcm_fast(std::uint64_t x, int r, const TableSet& tables) {
    require_x(x, "sum_omega_lcm_fast");
    tables.require(x, "sum_omega_lcm_fast");
    const FunctionTable& tau = tables.tau(r);
    const FunctionTable& omega = tables.small_omega();
    std::int64_t acc = 0;
    for (std::uint64_t k = 2; k <= x; ++k) {
        acc = checked_add(acc, checked_mul<std::int64_t>(omega[k], tau[k]), "omega_lcm sum");
    }
    return {SumKind::omega_lcm, x, r, acc, Method::fast};
}

std::int64_t summatory_tau3(std::uint64_t y, const TableSet& tables) {
    require_x(y, "summatory_tau3");
    tables.require(y, "summatory_tau3");
    return tables.tau3_prefix()[y];
}

SumResult sum_bigomega_gcd3_brute(std::uint64_t x, unsigned threads) {
    require_triple_guard(x, "sum_bigomega_gcd3_brute");
    const auto big_omega = eratosthenes_counts(x, true);
    const std::int64_t value = detail::parallel_sum(1, x + 1, threads, [&](std::uint64_t a) {
        std::int64_t acc = 0;
        for (std::uint64_t b = 1; a * b <= x; ++b) {
            const std::uint64_t g_ab = std::gcd(a, b);
            if (g_ab == 1) continue;  // every c then has gcd 1, Omega(1) = 0
            for (std::uint64_t c = 1; a * b * c <= x; ++c) acc += big_omega[std::gcd(g_ab, c)];
        }
        return acc;
    });
    return {SumKind::bigomega_gcd3, x, 3, value, Method::brute};
}

SumResult sum_bigomega_gcd3_fast(std::uint64_t x, const TableSet& tables) {
    require_x(x, "sum_bigomega_gcd3_fast");
    tables.require(x, "sum_bigomega_gcd3_fast");
    // sum_{n<=x} sum_{d^3 m = n} (mu*Omega)(d) tau_3(m) = sum_d (mu*Omega)(d) T_3(x / d^3)
    const FunctionTable& indicator = tables.mu_star_bigomega();
    const auto prefix = tables.tau3_prefix();
    std::int64_t acc = 0;
    for (std::uint64_t d = 2; d * d * d <= x; ++d) {
        if (indicator[d] == 0) continue;
        acc = checked_add(acc, checked_mul<std::int64_t>(indicator[d], prefix[x / (d * d * d)]),
                          "gcd3 sum");
    }
    return {SumKind::bigomega_gcd3, x, 3, acc, Method::fast};
}

SumResult sum_bigomega_pairgcd_in_triples_brute(std::uint64_t x, unsigned threads) {
    require_triple_guard(x, "sum_bigomega_pairgcd_in_triples_brute");
    const auto big_omega = eratosthenes_counts(x, true);
    const std::int64_t value = detail::parallel_sum(1, x + 1, threads, [&](std::uint64_t a) {
        std::int64_t acc = 0;
        for (std::uint64_t b = 1; a * b <= x; ++b) {
            const std::int64_t w = big_omega[std::gcd(a, b)];
            // Omega((a,b)) once for each c <= x/(ab)
            acc += w * static_cast<std::int64_t>(x / (a * b));
        }
        return acc;
    });
    return {SumKind::bigomega_pairgcd3, x, 3, value, Method::brute};
}

std::vector<std::int64_t> pair_gcd_weights_brute(std::uint64_t x) {
    require_x(x, "pair_gcd_weights_brute");
    if (tuple_count_bound(x, 2) > static_cast<double>(kBruteTupleGuard)) {
        throw ResourceError("pair_gcd_weights_brute: x = " + std::to_string(x) +
                            " exceeds the brute-force pair guard");
    }
    const auto big_omega = eratosthenes_counts(x, true);
    std::vector<std::int64_t> g(x, 0);
    for (std::uint64_t a = 1; a <= x; ++a) {
        for (std::uint64_t b = 1; a * b <= x; ++b) g[a * b - 1] += big_omega[std::gcd(a, b)];
    }
    return g;
}

std::vector<std::int64_t> pair_gcd_weights_fast(std::uint64_t x, const TableSet& tables) {
    require_x(x, "pair_gcd_weights_fast");
    tables.require(x, "pair_gcd_weights_fast");
    const FunctionTable& indicator = tables.mu_star_bigomega();
    const FunctionTable& tau2 = tables.tau(2);
    std::vector<std::int64_t> g(x, 0);
    for (std::uint64_t d = 2; d * d <= x; ++d) {
        if (indicator[d] == 0) continue;
        const std::uint64_t sq = d * d;
        for (std::uint64_t m = 1; sq * m <= x; ++m) {
            g[sq * m - 1] += std::int64_t{indicator[d]} * tau2[m];
        }
    }
    return g;
}

SumResult sum_bigomega_pairgcd_in_triples(std::uint64_t x, const TableSet& tables) {
    const auto g = pair_gcd_weights_fast(x, tables);
    std::int64_t acc = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (g[n - 1] == 0) continue;
        acc = checked_add(acc, checked_mul<std::int64_t>(g[n - 1], static_cast<std::int64_t>(x / n)),
                          "pairgcd sum");
    }
    return {SumKind::bigomega_pairgcd3, x, 3, acc, Method::fast};
}

WeightedSum weighted_pairgcd_sum_brute(std::uint64_t x) {
    return finish_weighted(x, Method::brute, pair_gcd_weights_brute(x));
}

WeightedSum weighted_pairgcd_sum(std::uint64_t x, const TableSet& tables) {
    return finish_weighted(x, Method::fast, pair_gcd_weights_fast(x, tables));
}

SumResult sum_bigomega_lcm3_brute(std::uint64_t x, unsigned threads) {
    require_triple_guard(x, "sum_bigomega_lcm3_brute");
    const auto big_omega = eratosthenes_counts(x, true);
    const std::int64_t value = triple_sum(x, threads, [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        const std::uint64_t l = std::lcm(std::lcm(a, b), c);
        return std::int64_t{big_omega[l]};
    });
    return {SumKind::bigomega_lcm3, x, 3, value, Method::brute};
}

SumResult sum_bigomega_lcm3_fast(std::uint64_t x, const TableSet& tables) {
    // Summing the pointwise seven-term identity over abc <= x: the singleton
    // terms give Omega(abc), the three pair terms are equal by symmetry.
    const std::int64_t tau_part = sum_bigomega_tau3(x, tables).value;
    const std::int64_t pair_part = sum_bigomega_pairgcd_in_triples(x, tables).value;
    const std::int64_t gcd_part = sum_bigomega_gcd3_fast(x, tables).value;
    const std::int64_t value =
        checked_add(checked_sub(tau_part, checked_mul<std::int64_t>(3, pair_part)), gcd_part, "lcm3 sum");
    return {SumKind::bigomega_lcm3, x, 3, value, Method::fast};
}

SumResult sum_bigomega_tau3_brute(std::uint64_t x, unsigned threads) {
    require_triple_guard(x, "sum_bigomega_tau3_brute");
    const auto big_omega = eratosthenes_counts(x, true);
    const std::int64_t value = triple_sum(x, threads, [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return std::int64_t{big_omega[a * b * c]};
    });
    return {SumKind::bigomega_tau3, x, 3, value, Method::brute};
}

SumResult sum_bigomega_tau3(std::uint64_t x, const TableSet& tables) {
    require_x(x, "sum_bigomega_tau3");
    tables.require(x, "sum_bigomega_tau3");
    const FunctionTable& big_omega = tables.big_omega();
    const FunctionTable& tau3 = tables.tau(3);
    std::int64_t acc = 0;
    for (std::uint64_t n = 2; n <= x; ++n) {
        acc = checked_add(acc, checked_mul<std::int64_t>(big_omega[n], tau3[n]), "Omega tau_3 sum");
    }
    return {SumKind::bigomega_tau3, x, 3, acc, Method::fast};
}

SumResult compute_sum(SumKind kind, Method method, std::uint64_t x, int r, const TableSet* tables,
                      unsigned threads) {
    const bool fast = method == Method::fast;
    if (fast && tables == nullptr) throw InvalidArgument("compute_sum: fast method needs tables");
    switch (kind) {
        case SumKind::omega_lcm:
            return fast ? sum_omega_lcm_fast(x, r, *tables) : sum_omega_lcm_brute(x, r, threads);
        case SumKind::bigomega_gcd3:
            return fast ? sum_bigomega_gcd3_fast(x, *tables) : sum_bigomega_gcd3_brute(x, threads);
        case SumKind::bigomega_lcm3:
            return fast ? sum_bigomega_lcm3_fast(x, *tables) : sum_bigomega_lcm3_brute(x, threads);
        case SumKind::bigomega_tau3:
            return fast ? sum_bigomega_tau3(x, *tables) : sum_bigomega_tau3_brute(x, threads);
        case SumKind::bigomega_pairgcd3:
            return fast ? sum_bigomega_pairgcd_in_triples(x, *tables)
                        : sum_bigomega_pairgcd_in_triples_brute(x, threads);
        case SumKind::weighted_gcd_pairs:
            break;
    }
    throw InvalidArgument("compute_sum: weighted_gcd_pairs is rational-valued; use weighted_pairgcd_sum");
}

}  // namespace hsum
