#include "hypersum/identities.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "hypersum/error.hpp"
#include "test_util.hpp"

using namespace hsum;

namespace {

const TableSet& small_tables() {
    static const TableSet t = TableSet::build(5000, {4, 5});
    return t;
}

}  // namespace

TEST_CASE("ordered factorizations") {
    CHECK(enumerate_ordered_factorizations(1, 3) == std::vector<OrderedFactorization>{{1, 1, 1}});
    const auto four = enumerate_ordered_factorizations(4, 2);
    CHECK(std::set<OrderedFactorization>(four.begin(), four.end()) ==
          std::set<OrderedFactorization>{{1, 4}, {2, 2}, {4, 1}});
    CHECK(four.size() == 3);
    CHECK(enumerate_ordered_factorizations(12, 3).size() ==
          static_cast<std::size_t>(small_tables().tau(3)[12]));

    for (std::uint64_t k = 1; k <= 300; ++k) {
        for (int r = 2; r <= 4; ++r) {
            const auto all = enumerate_ordered_factorizations(k, r);
            REQUIRE(static_cast<std::int64_t>(all.size()) == oracle::count_ordered(k, r));
            std::set<OrderedFactorization> distinct;
            for (const auto& t : all) {
                REQUIRE(t.size() == static_cast<std::size_t>(r));
                std::uint64_t product = 1;
                for (const auto v : t) product *= v;
                REQUIRE(product == k);
                distinct.insert(t);
            }
            REQUIRE(distinct.size() == all.size());
        }
    }
}

TEST_CASE("ordered factorization guard is a hard error") {
    // tau_5(2^10 * 3^5) = C(14,10) * C(9,5) = 1001 * 126
    CHECK_THROWS_AS(enumerate_ordered_factorizations(1024 * 243, 5, 100'000), ResourceError);
    CHECK_NOTHROW(enumerate_ordered_factorizations(1024 * 243, 5, 200'000));
    CHECK_THROWS_AS(enumerate_ordered_factorizations(0, 3), InvalidArgument);
    CHECK_THROWS_AS(enumerate_ordered_factorizations(5, 1), InvalidArgument);
}

TEST_CASE("lemma1 pointwise") {
    const auto& t = small_tables();
    auto one = check_lemma1(1, 3, t);
    CHECK(one.pass);
    CHECK(one.lhs == 0);
    CHECK(one.rhs == 0);

    auto four = check_lemma1(4, 2, t);
    CHECK(four.pass);
    CHECK(four.lhs == 3);
    CHECK(four.rhs == 3);

    CHECK(check_lemma1(360, 4, t).pass);

    // Independent oracle: brute lhs against omega(k) * count_ordered(k, r).
    for (std::uint64_t k = 1; k <= 200; ++k) {
        for (int r = 2; r <= 4; ++r) {
            const auto v = check_lemma1(k, r, t);
            REQUIRE(v.pass);
            REQUIRE(v.rhs == oracle::small_omega(k) * oracle::count_ordered(k, r));
        }
    }
}

TEST_CASE("inclusion-exclusion pointwise") {
    const auto& t = small_tables();
    auto one = check_inclusion_exclusion(1, 2, t);
    CHECK(one.pass);
    CHECK(one.lhs == 0);

    for (const std::uint64_t p : {2u, 3u, 97u}) {
        auto v = check_inclusion_exclusion(p, 2, t);
        CHECK(v.pass);
        CHECK(v.lhs == 2);
        CHECK(v.rhs == 2);
    }
    CHECK(check_inclusion_exclusion(36, 3, t).pass);
    CHECK(check_inclusion_exclusion(720, 3, t).pass);
}

TEST_CASE("seven-term lcm decomposition pointwise") {
    const auto& t = small_tables();
    auto v1 = check_lcm_sevenfold(1, 1, 1, t);
    CHECK(v1.pass);
    CHECK(v1.lhs == 0);
    auto v2 = check_lcm_sevenfold(2, 2, 2, t);
    CHECK(v2.pass);
    CHECK(v2.lhs == 1);
    auto v3 = check_lcm_sevenfold(4, 6, 9, t);
    CHECK(v3.pass);
    CHECK(v3.lhs == 4);
    CHECK(v3.rhs == 4);

    for (std::uint64_t a = 1; a <= 40; ++a) {
        for (std::uint64_t b = 1; b <= 40; ++b) {
            for (std::uint64_t c = 1; c <= 3; ++c) {
                const std::uint64_t l = std::lcm(std::lcm(a, b), c);
                const auto v = check_lcm_sevenfold(a, b, c, t);
                REQUIRE(v.pass);
                REQUIRE(v.lhs == oracle::big_omega(l));
            }
        }
    }
}

TEST_CASE("thm2 convolution pointwise") {
    const auto& t = small_tables();
    auto seven = check_thm2_convolution(7, t);
    CHECK(seven.pass);
    CHECK(seven.lhs == 0);
    auto eight = check_thm2_convolution(8, t);
    CHECK(eight.pass);
    CHECK(eight.lhs == 1);
    CHECK(eight.rhs == 1);
    CHECK(check_thm2_convolution(64, t).pass);

    // lhs oracle: explicit triple loop with trial-division Omega of the gcd.
    for (std::uint64_t n = 1; n <= 400; ++n) {
        std::int64_t lhs = 0;
        for (std::uint64_t a = 1; a <= n; ++a) {
            if (n % a) continue;
            for (std::uint64_t b = 1; b <= n / a; ++b) {
                if ((n / a) % b) continue;
                const std::uint64_t c = n / a / b;
                lhs += oracle::big_omega(std::gcd(std::gcd(a, b), c));
            }
        }
        const auto v = check_thm2_convolution(n, t);
        REQUIRE(v.pass);
        REQUIRE(v.lhs == lhs);
    }
}

TEST_CASE("pair-gcd symmetry") {
    for (std::uint64_t n = 1; n <= 500; ++n) REQUIRE(check_pairgcd_symmetry(n).pass);
}

TEST_CASE("suites: small uniform bound and fault injection") {
    const auto& t = small_tables();
    const auto trivial = run_identity_suites(SuiteBounds::uniform(1), t);
    CHECK(trivial.size() == 4);
    for (const auto& s : trivial) CHECK(s.failed == 0);

    const auto bounds = SuiteBounds::uniform(500);
    const auto one = run_identity_suites(bounds, t, 1);
    const auto four = run_identity_suites(bounds, t, 4);
    REQUIRE(one.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(one[i].failed == 0);
        CHECK(one[i].checked > 0);
        CHECK(one[i].name == four[i].name);
        CHECK(one[i].checked == four[i].checked);
    }

    const TableSet broken = t.with_table(t.tau(3).with_value(2, 4));
    const auto bad = run_identity_suites(bounds, broken, 3);
    std::uint64_t failed = 0;
    for (const auto& s : bad) failed += s.failed;
    CHECK(failed > 0);
    const auto& lemma1 = bad[0];
    REQUIRE_FALSE(lemma1.failures.empty());
    CHECK(lemma1.failures.front().argument.find("k=2") != std::string::npos);

    CHECK_THROWS_AS(run_identity_suites(SuiteBounds::uniform(10'000), t), InvalidArgument);
}
