#include "hypersum/constants.hpp"

#include <cmath>
#include <numeric>

#include "hypersum/compensated.hpp"
#include "hypersum/error.hpp"

namespace hsum {

std::string to_string(PrimeSumFamily family) {
    switch (family) {
        case PrimeSumFamily::c2: return "C2";
        case PrimeSumFamily::c_omega: return "C_Omega";
        case PrimeSumFamily::s_r: return "S_r";
        case PrimeSumFamily::s_omega: return "S_Omega";
    }
    return "unknown";
}

PrimeSumFamily parse_prime_sum_family(const std::string& s) {
    if (s == "C2") return PrimeSumFamily::c2;
    if (s == "C_Omega" || s == "COmega") return PrimeSumFamily::c_omega;
    if (s == "S_r") return PrimeSumFamily::s_r;
    if (s == "S_Omega") return PrimeSumFamily::s_omega;
    throw InvalidArgument("unknown prime-sum family '" + s + "'");
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    if (limit < 2) throw InvalidArgument("primes_up_to: limit must be >= 2");
    if (limit > 0xFFFFFFFFull) throw InvalidArgument("primes_up_to: limit must fit in 32 bits");
    std::vector<std::uint8_t> composite(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

namespace {

void require_r(PrimeSumFamily family, int r) {
    if (family == PrimeSumFamily::s_r && r < 2) {
        throw InvalidArgument("S_r needs r >= 2, got " + std::to_string(r));
    }
}

std::string family_name(PrimeSumFamily family, int r) {
    return family == PrimeSumFamily::s_r ? "S_" + std::to_string(r) : to_string(family);
}

std::string family_formula(PrimeSumFamily family, int r) {
    switch (family) {
        case PrimeSumFamily::c2: return "sum_p 1/(p^3-1)";
        case PrimeSumFamily::c_omega: return "sum_p 1/(p^2-1)";
        case PrimeSumFamily::s_r: {
            const std::string rs = std::to_string(r);
            return "sum_p log(1-1/p) + 1/" + rs + " - (1/" + rs + ")(1-1/p)^" + rs;
        }
        case PrimeSumFamily::s_omega: return "sum_p log(1-1/p) + 1/(p-1)";
    }
    return {};
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::int64_t factorial_int(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational reduced(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

}  // namespace

double prime_sum_term(PrimeSumFamily family, std::uint64_t p, int r) {
    require_r(family, r);
    const double pd = static_cast<double>(p);
    const double z = 1.0 / pd;
    switch (family) {
        case PrimeSumFamily::c2: return 1.0 / (pd * pd * pd - 1.0);
        case PrimeSumFamily::c_omega: return 1.0 / (pd * pd - 1.0);
        case PrimeSumFamily::s_r: {
            // log(1-z) + (1 - (1-z)^r)/r, written to avoid cancellation at small z
            const double l = std::log1p(-z);
            return l - std::expm1(r * l) / r;
        }
        case PrimeSumFamily::s_omega: return std::log1p(-z) + 1.0 / (pd - 1.0);
    }
    throw InvalidArgument("prime_sum_term: unknown family");
}

double prime_sum_tail_bound(PrimeSumFamily family, std::uint64_t cutoff, int r) {
    require_r(family, r);
    if (cutoff < 3) throw InvalidArgument("prime-sum cutoff must be >= 3");
    const double P = static_cast<double>(cutoff);
    switch (family) {
        case PrimeSumFamily::c2:
            // n^3 - 1 >= (n-1) n (n+1) and 1/((n-1)n(n+1)) telescopes:
            // sum_{n>P} 1/(n^3-1) <= 1/(2P(P+1)) <= 1/(P-1)^2.
            return 1.0 / ((P - 1.0) * (P - 1.0));
        case PrimeSumFamily::c_omega:
            // 1/(n^2-1) = (1/2)(1/(n-1) - 1/(n+1)); the sum over n > P
            // telescopes to exactly (1/2)(1/P + 1/(P+1)).
            return 0.5 * (1.0 / P + 1.0 / (P + 1.0));
        case PrimeSumFamily::s_omega:
            // With z = 1/n: log(1-z) + z/(1-z) = sum_{k>=2} (1-1/k) z^k lies
            // in (0, z^2/(1-z)] = (0, 1/(n(n-1))]; the tail telescopes to 1/P,
            // reported as 1/(P-1).
            return 1.0 / (P - 1.0);
        case PrimeSumFamily::s_r:
            // |log(1-z) + z| <= z^2/(2(1-z)) <= z^2 and
            // |(1-(1-z)^r)/r - z| <= (r-1) z^2 / 2, so each term is at most
            // r z^2 = r/n^2 in magnitude; sum_{n>P} 1/n^2 < 1/P <= 1/(P-1).
            return static_cast<double>(r) / (P - 1.0);
    }
    throw InvalidArgument("prime_sum_tail_bound: unknown family");
}

PrimeSumValue eval_prime_sum(PrimeSumFamily family, std::uint64_t cutoff,
                             std::span<const std::uint32_t> primes, int r) {
    require_r(family, r);
    if (cutoff < 3) throw InvalidArgument("eval_prime_sum: cutoff must be >= 3");
    PrimeSumValue out;
    out.name = family_name(family, r);
    out.formula = family_formula(family, r);
    out.cutoff = cutoff;
    CompensatedSum sum;
    for (const std::uint32_t p : primes) {
        if (p > cutoff) break;
        sum.add(prime_sum_term(family, p, r));
        out.largest_prime = p;
    }
    out.partial = sum.value();
    out.tail_bound = prime_sum_tail_bound(family, cutoff, r);
    return out;
}

PrimeSumValue eval_prime_sum(PrimeSumFamily family, std::uint64_t cutoff, int r) {
    if (cutoff < 3) throw InvalidArgument("eval_prime_sum: cutoff must be >= 3");
    require_r(family, r);
    const auto primes = primes_up_to(cutoff);
    return eval_prime_sum(family, cutoff, primes, r);
}

double gamma_prime(int r) {
    if (r < 2 || r > 20) throw InvalidArgument("gamma_prime: r must be in [2, 20], got " + std::to_string(r));
    double harmonic = 0.0;
    for (int k = 1; k <= r - 1; ++k) harmonic += 1.0 / k;
    return factorial(r - 1) * (harmonic - kEulerGamma);
}

const ConstantValue& ConstantSet::c_of(int r) const {
    const auto it = C.find(r);
    if (it == C.end()) throw InvalidArgument("ConstantSet: no C for r = " + std::to_string(r));
    return it->second;
}

const ConstantValue& ConstantSet::c1_of(int r) const {
    const auto it = C1.find(r);
    if (it == C1.end()) throw InvalidArgument("ConstantSet: no C1 for r = " + std::to_string(r));
    return it->second;
}

std::vector<ConstantValue> ConstantSet::all() const {
    std::vector<ConstantValue> out;
    auto from_sum = [](const PrimeSumValue& s) {
        ConstantValue v;
        v.name = s.name;
        v.formula = s.formula;
        v.cutoff = s.cutoff;
        v.value = s.partial;
        v.tail_bound = s.tail_bound;
        return v;
    };
    out.push_back(C2);
    out.push_back(C_Omega);
    out.push_back(S_Omega);
    for (const auto& [r, s] : S_r) out.push_back(from_sum(s));
    for (const auto& [r, v] : gamma_prime) out.push_back(v);
    for (const auto& [r, v] : C) out.push_back(v);
    for (const auto& [r, v] : C1) out.push_back(v);
    out.push_back(K);
    out.push_back(K1);
    out.push_back(thm3_coeff);
    return out;
}

ConstantSet build_constant_set(std::uint64_t cutoff) {
    if (cutoff < 1000) {
        throw InvalidArgument("build_constant_set: cutoff must be >= 1000, got " + std::to_string(cutoff));
    }
    const auto primes = primes_up_to(cutoff);
    ConstantSet set;
    set.cutoff = cutoff;

    auto as_constant = [](const PrimeSumValue& s) {
        ConstantValue v;
        v.name = s.name;
        v.formula = s.formula;
        v.cutoff = s.cutoff;
        v.value = s.partial;
        v.tail_bound = s.tail_bound;
        return v;
    };

    set.C2_sum = eval_prime_sum(PrimeSumFamily::c2, cutoff, primes);
    set.C_Omega_sum = eval_prime_sum(PrimeSumFamily::c_omega, cutoff, primes);
    set.S_Omega_sum = eval_prime_sum(PrimeSumFamily::s_omega, cutoff, primes);
    set.C2 = as_constant(set.C2_sum);
    set.C_Omega = as_constant(set.C_Omega_sum);
    set.S_Omega = as_constant(set.S_Omega_sum);

    for (int r = kConstantSetMinR; r <= kConstantSetMaxR; ++r) {
        const std::string rs = std::to_string(r);
        const PrimeSumValue s_r = eval_prime_sum(PrimeSumFamily::s_r, cutoff, primes, r);
        set.S_r.emplace(r, s_r);

        ConstantValue gp;
        gp.name = "gamma_prime_" + rs;
        gp.formula = "(r-1)! (H_{r-1} - gamma), r=" + rs;
        gp.value = gamma_prime(r);
        set.gamma_prime.emplace(r, gp);

        const std::int64_t fact = factorial_int(r - 1);
        ConstantValue c;
        c.name = "C_" + rs;
        c.formula = "r/(r-1)!, r=" + rs;
        c.exact = reduced(r, fact);
        c.value = c.exact->value();
        set.C.emplace(r, c);

        const double scale = static_cast<double>(r) / (static_cast<double>(fact) * static_cast<double>(fact));
        ConstantValue c1;
        c1.name = "C1_" + rs;
        c1.formula = "r/((r-1)!)^2 * (r*S_r - gamma_prime(r)), r=" + rs;
        c1.cutoff = cutoff;
        c1.value = scale * (r * s_r.partial - gp.value);
        c1.tail_bound = scale * r * s_r.tail_bound;
        set.C1.emplace(r, c1);
    }

    set.K.name = "K";
    set.K.formula = "3/2";
    set.K.exact = Rational{3, 2};
    set.K.value = 1.5;

    set.K1.name = "K1";
    set.K1.formula = "(9/4) S_Omega - (3/4) gamma_prime(3)";
    set.K1.cutoff = cutoff;
    set.K1.value = 2.25 * set.S_Omega.value - 0.75 * set.gamma_prime.at(3).value;
    set.K1.tail_bound = 2.25 * set.S_Omega.tail_bound;

    set.thm3_coeff.name = "thm3_coeff";
    set.thm3_coeff.formula = "K1 + (C2 - 3 C_Omega)/2";
    set.thm3_coeff.cutoff = cutoff;
    set.thm3_coeff.value = set.K1.value + (set.C2.value - 3.0 * set.C_Omega.value) / 2.0;
    set.thm3_coeff.tail_bound =
        set.K1.tail_bound + 0.5 * set.C2.tail_bound + 1.5 * set.C_Omega.tail_bound;
    return set;
}

}  // namespace hsum
