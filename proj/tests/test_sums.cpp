#include "hypersum/sums.hpp"

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "hypersum/error.hpp"
#include "test_util.hpp"

using namespace hsum;

namespace {

const TableSet& tables() {
    static const TableSet t = TableSet::build(100'000, {4, 5});
    return t;
}

// Triple-loop oracle: sum of f(a, b, c) over abc <= x with trial-division Omega.
template <typename F>
std::int64_t triple_oracle(std::uint64_t x, F&& f) {
    std::int64_t total = 0;
    for (std::uint64_t a = 1; a <= x; ++a) {
        for (std::uint64_t b = 1; a * b <= x; ++b) {
            for (std::uint64_t c = 1; a * b * c <= x; ++c) total += f(a, b, c);
        }
    }
    return total;
}

}  // namespace

TEST_CASE("omega_lcm examples") {
    CHECK(sum_omega_lcm_brute(1, 3).value == 0);
    CHECK(sum_omega_lcm_brute(2, 3).value == 3);
    CHECK(sum_omega_lcm_brute(4, 2).value == 7);
    CHECK(sum_omega_lcm_fast(4, 2, tables()).value == 7);
    CHECK(sum_omega_lcm_fast(1, 5, tables()).value == 0);
    // oracle: sum_k omega(k) * count_ordered(k, r)
    for (int r = 2; r <= 5; ++r) {
        std::int64_t expected = 0;
        for (std::uint64_t k = 1; k <= 300; ++k) {
            expected += oracle::small_omega(k) * oracle::count_ordered(k, r);
        }
        CHECK(sum_omega_lcm_brute(300, r).value == expected);
        CHECK(sum_omega_lcm_fast(300, r, tables()).value == expected);
    }
    CHECK(sum_omega_lcm_brute(1000, 3).value == sum_omega_lcm_fast(1000, 3, tables()).value);
}

TEST_CASE("omega_lcm fast against a convolution-built tau_3 at 10^5") {
    const std::uint64_t x = 100'000;
    const FunctionTable ones = ones_table(x);
    const FunctionTable tau3 = dirichlet_convolve(dirichlet_convolve(ones, ones), ones, "tau_3");
    std::int64_t expected = 0;
    for (std::uint64_t k = 1; k <= x; ++k) expected += std::int64_t{tables().small_omega()[k]} * tau3[k];
    CHECK(sum_omega_lcm_fast(x, 3, tables()).value == expected);
}

TEST_CASE("summatory tau_3") {
    CHECK(summatory_tau3(1, tables()) == 1);
    CHECK(summatory_tau3(10, tables()) == 53);
    std::int64_t triples = triple_oracle(10'000, [](auto, auto, auto) { return 1; });
    CHECK(summatory_tau3(10'000, tables()) == triples);
    CHECK_THROWS_AS(summatory_tau3(100'001, tables()), InvalidArgument);
}

TEST_CASE("gcd3 sums and thresholds") {
    for (std::uint64_t x = 1; x <= 7; ++x) {
        CHECK(sum_bigomega_gcd3_brute(x).value == 0);
        CHECK(sum_bigomega_gcd3_fast(x, tables()).value == 0);
    }
    CHECK(sum_bigomega_gcd3_brute(8).value == 1);
    CHECK(sum_bigomega_gcd3_fast(8, tables()).value == 1);

    const auto gcd3 = [](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return oracle::big_omega(std::gcd(std::gcd(a, b), c));
    };
    const std::int64_t at26 = triple_oracle(26, gcd3);
    CHECK(at26 == 7);
    CHECK(sum_bigomega_gcd3_fast(26, tables()).value == at26);
    CHECK(sum_bigomega_gcd3_brute(26).value == at26);
    CHECK(sum_bigomega_gcd3_fast(2000, tables()).value == triple_oracle(2000, gcd3));
    CHECK(sum_bigomega_gcd3_brute(1000, 3).value == sum_bigomega_gcd3_fast(1000, tables()).value);
}

TEST_CASE("pair gcd in triples") {
    CHECK(sum_bigomega_pairgcd_in_triples(3, tables()).value == 0);
    CHECK(sum_bigomega_pairgcd_in_triples(4, tables()).value == 1);
    CHECK(sum_bigomega_pairgcd_in_triples_brute(3).value == 0);
    CHECK(sum_bigomega_pairgcd_in_triples_brute(4).value == 1);
    const auto pair = [](std::uint64_t a, std::uint64_t b, std::uint64_t) {
        return oracle::big_omega(std::gcd(a, b));
    };
    CHECK(sum_bigomega_pairgcd_in_triples(1000, tables()).value == triple_oracle(1000, pair));
    CHECK(sum_bigomega_pairgcd_in_triples_brute(1000).value == triple_oracle(1000, pair));
}

TEST_CASE("pair gcd weights and weighted sum") {
    CHECK(weighted_pairgcd_sum(3, tables()).value == 0.0);
    const WeightedSum four = weighted_pairgcd_sum(4, tables());
    CHECK(four.exact);
    CHECK(four.numerator == 1);
    CHECK(four.denominator == 4);
    CHECK(four.render() == "1/4");

    // g(n) by direct divisor-pair enumeration.
    const std::uint64_t x = 10'000;
    std::vector<std::int64_t> g(x, 0);
    for (std::uint64_t a = 1; a <= x; ++a) {
        for (std::uint64_t b = 1; a * b <= x; ++b) g[a * b - 1] += oracle::big_omega(std::gcd(a, b));
    }
    const WeightedSum fast = weighted_pairgcd_sum(x, tables());
    const WeightedSum brute = weighted_pairgcd_sum_brute(x);
    CHECK(fast.weights == g);
    CHECK(brute.weights == g);
    CHECK(fast.value == brute.value);

    long double reference = 0;
    for (std::uint64_t n = x; n >= 1; --n) reference += static_cast<long double>(g[n - 1]) / n;
    CHECK(std::fabs(static_cast<double>(reference) - fast.value) <= fast.error_bound + 1e-15);
    CHECK(fast.error_bound <= 1e-9);

    // Small x stays exact; the rational matches the float.
    for (std::uint64_t y = 1; y <= 40; ++y) {
        const WeightedSum w = weighted_pairgcd_sum(y, tables());
        REQUIRE(w.exact);
        REQUIRE(std::fabs(static_cast<double>(w.numerator) / static_cast<double>(w.denominator) - w.value) <=
                1e-12);
    }
}

TEST_CASE("lcm3 and Omega tau_3") {
    CHECK(sum_bigomega_lcm3_brute(2).value == 3);
    CHECK(sum_bigomega_lcm3_fast(2, tables()).value == 3);
    const auto lcm3 = [](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return oracle::big_omega(std::lcm(std::lcm(a, b), c));
    };
    CHECK(sum_bigomega_lcm3_brute(8).value == triple_oracle(8, lcm3));
    CHECK(sum_bigomega_lcm3_fast(8, tables()).value == triple_oracle(8, lcm3));
    CHECK(sum_bigomega_lcm3_fast(2000, tables()).value == triple_oracle(2000, lcm3));

    CHECK(sum_bigomega_tau3(1, tables()).value == 0);
    CHECK(sum_bigomega_tau3(4, tables()).value == 18);
    CHECK(sum_bigomega_tau3_brute(4).value == 18);
    std::int64_t expected = 0;
    for (std::uint64_t n = 1; n <= 3000; ++n) expected += oracle::big_omega(n) * oracle::count_ordered(n, 3);
    CHECK(sum_bigomega_tau3(3000, tables()).value == expected);
}

TEST_CASE("monotone in x and decomposition on a small range") {
    std::int64_t prev_gcd = 0, prev_lcm = 0, prev_pair = 0;
    for (std::uint64_t x = 1; x <= 3000; ++x) {
        const auto gcd3 = sum_bigomega_gcd3_fast(x, tables()).value;
        const auto lcm3 = sum_bigomega_lcm3_fast(x, tables()).value;
        const auto pair = sum_bigomega_pairgcd_in_triples(x, tables()).value;
        const auto ot = sum_bigomega_tau3(x, tables()).value;
        REQUIRE(gcd3 >= prev_gcd);
        REQUIRE(lcm3 >= prev_lcm);
        REQUIRE(pair >= prev_pair);
        REQUIRE(lcm3 == ot - 3 * pair + gcd3);
        prev_gcd = gcd3;
        prev_lcm = lcm3;
        prev_pair = pair;
    }
}

TEST_CASE("compute_sum dispatch, names and errors") {
    for (const auto kind : {SumKind::omega_lcm, SumKind::bigomega_gcd3, SumKind::bigomega_lcm3,
                            SumKind::bigomega_tau3, SumKind::bigomega_pairgcd3}) {
        CHECK(parse_sum_kind(to_string(kind)) == kind);
        const auto b = compute_sum(kind, Method::brute, 500, 3, nullptr, 2);
        const auto f = compute_sum(kind, Method::fast, 500, 3, &tables());
        CHECK(b.value == f.value);
        CHECK(b.kind == kind);
        CHECK(f.method == Method::fast);
    }
    CHECK(parse_method("brute") == Method::brute);
    CHECK_THROWS_AS(parse_method("both"), InvalidArgument);
    CHECK_THROWS_AS(parse_sum_kind("nope"), InvalidArgument);
    CHECK_THROWS_AS(compute_sum(SumKind::weighted_gcd_pairs, Method::fast, 10, 2, &tables()), InvalidArgument);
    CHECK_THROWS_AS(compute_sum(SumKind::bigomega_gcd3, Method::fast, 10, 3, nullptr), InvalidArgument);
    CHECK_THROWS_AS(sum_bigomega_gcd3_fast(0, tables()), InvalidArgument);
    CHECK_THROWS_AS(sum_bigomega_gcd3_fast(200'000, tables()), InvalidArgument);
    CHECK_THROWS_AS(sum_omega_lcm_brute(10, 1), InvalidArgument);
    // (1 + ln 10^6)^4 * 10^6 is far past the tuple guard.
    CHECK_THROWS_AS(sum_omega_lcm_brute(1'000'000, 5), ResourceError);
    CHECK_THROWS_AS(sum_bigomega_gcd3_brute(kBruteTripleMaxX + 1), ResourceError);
}

TEST_CASE("brute is thread-count independent") {
    CHECK(sum_bigomega_lcm3_brute(20'000, 1).value == sum_bigomega_lcm3_brute(20'000, 4).value);
    CHECK(sum_omega_lcm_brute(5000, 4, 1).value == sum_omega_lcm_brute(5000, 4, 3).value);
}
