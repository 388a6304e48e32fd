#include "hypersum/table_cache.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "hypersum/error.hpp"

using namespace hsum;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("hsum_cache_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("save/load round trip") {
    TempDir tmp;
    const FactorSieve sieve = build_spf_sieve(5000);
    for (const auto& name : {FunctionName{FunctionKind::big_omega}, FunctionName{FunctionKind::mobius},
                             FunctionName::tau(4)}) {
        const FunctionTable t = build_table(name, 5000, sieve);
        const fs::path p = tmp.path / (t.name() + ".hsum");
        save_table(p, t);
        CHECK(load_table(p) == t);
        CHECK(load_table(p, t.name(), 5000) == t);
        // header + payload
        CHECK(fs::file_size(p) == 5 + 1 + 2 + t.name().size() + 8 + 1 + 4 * 5000);
    }
}

TEST_CASE("load rejects mismatches and corruption") {
    TempDir tmp;
    const FactorSieve sieve = build_spf_sieve(100);
    const FunctionTable t = build_table({FunctionKind::big_omega}, 100, sieve);
    const fs::path p = tmp.path / "t.hsum";
    save_table(p, t);

    CHECK_THROWS_AS(load_table(p, std::string("small_omega")), InvalidArgument);
    CHECK_THROWS_AS(load_table(p, std::nullopt, 99), InvalidArgument);
    CHECK_THROWS_AS(load_table(tmp.path / "missing.hsum"), InvalidArgument);

    {
        std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
        f.put('X');
    }
    CHECK_THROWS_AS(load_table(p), InvalidArgument);

    save_table(p, t);
    fs::resize_file(p, fs::file_size(p) - 3);
    CHECK_THROWS_AS(load_table(p), InvalidArgument);

    save_table(p, t);
    {
        std::ofstream f(p, std::ios::binary | std::ios::app);
        f.put('\0');
    }
    CHECK_THROWS_AS(load_table(p), InvalidArgument);

    save_table(p, t);
    {
        std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(5);
        f.put(static_cast<char>(kCacheFormatVersion + 1));
    }
    CHECK_THROWS_AS(load_table(p), InvalidArgument);
}

TEST_CASE("TableCache builds once, then reuses; corrupt files are rebuilt") {
    TempDir tmp;
    const TableCache cache(tmp.path / "nested");
    const FactorSieve sieve = build_spf_sieve(1000);
    int builds = 0;
    auto build = [&] {
        ++builds;
        return build_table(FunctionName::tau(3), 1000, sieve);
    };
    const FunctionTable first = cache.load_or_build("tau_3", 1000, build);
    CHECK(builds == 1);
    CHECK(fs::exists(cache.path_for("tau_3", 1000)));
    const FunctionTable second = cache.load_or_build("tau_3", 1000, build);
    CHECK(builds == 1);
    CHECK(first == second);

    fs::resize_file(cache.path_for("tau_3", 1000), 10);
    const FunctionTable third = cache.load_or_build("tau_3", 1000, build);
    CHECK(builds == 2);
    CHECK(third == first);
    CHECK(load_table(cache.path_for("tau_3", 1000)) == first);

    CHECK(cache.path_for("tau_3", 1000) != cache.path_for("tau_3", 1001));
    CHECK(cache.path_for("tau_3", 1000) != cache.path_for("tau_2", 1000));
}

TEST_CASE("TableSet built through a cache equals one built directly") {
    TempDir tmp;
    const TableCache cache(tmp.path);
    TableSet::Options opts;
    opts.limit = 20'000;
    opts.extra_r = {4};
    opts.cache = &cache;
    const TableSet cached_cold = TableSet::build(opts);
    const TableSet cached_warm = TableSet::build(opts);
    const TableSet direct = TableSet::build(20'000, {4});
    for (const auto* set : {&cached_cold, &cached_warm}) {
        CHECK(set->big_omega() == direct.big_omega());
        CHECK(set->small_omega() == direct.small_omega());
        CHECK(set->mu_star_bigomega() == direct.mu_star_bigomega());
        CHECK(set->tau(3) == direct.tau(3));
        CHECK(set->tau(4) == direct.tau(4));
        CHECK(std::ranges::equal(set->tau3_prefix(), direct.tau3_prefix()));
    }
}
