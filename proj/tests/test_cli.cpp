#include "hypersum/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "hypersum/error.hpp"

using namespace hsum::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "hypersum");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& stem) {
    std::random_device rd;
    return fs::temp_directory_path() / (stem + "_" + std::to_string(rd()));
}

}  // namespace

TEST_CASE("decade grid") {
    CHECK(parse_decade_grid("3,4,5") == std::vector<std::uint64_t>{1000, 10'000, 100'000});
    CHECK(parse_decade_grid("0") == std::vector<std::uint64_t>{1});
    CHECK_THROWS_AS(parse_decade_grid("3,x"), hsum::InvalidArgument);
    CHECK_THROWS_AS(parse_decade_grid(""), hsum::InvalidArgument);
    CHECK_THROWS_AS(parse_decade_grid("13"), hsum::InvalidArgument);
}

TEST_CASE("sum command") {
    auto both = run_args({"sum", "--kind", "bigomega_gcd3", "--x", "8", "--method", "both"});
    CHECK(both.code == kExitOk);
    CHECK(both.out ==
          "kind,x,r,method,value,agreement\n"
          "bigomega_gcd3,8,3,brute,1,true\n"
          "bigomega_gcd3,8,3,fast,1,true\n");

    auto lcm = run_args({"sum", "--kind", "omega_lcm", "--r", "2", "--x", "4"});
    CHECK(lcm.code == kExitOk);
    CHECK(lcm.out == "kind,x,r,method,value\nomega_lcm,4,2,fast,7\n");

    auto weighted = run_args({"sum", "--kind", "weighted_gcd_pairs", "--x", "4", "--method", "both"});
    CHECK(weighted.code == kExitOk);
    CHECK(weighted.out.find("weighted_gcd_pairs,4,2,fast,1/4,true") != std::string::npos);

    auto json = run_args({"sum", "--kind", "bigomega_tau3", "--x", "4", "--format", "json"});
    CHECK(json.code == kExitOk);
    const auto parsed = nlohmann::json::parse(json.out);
    CHECK(parsed.at(0).at("value") == "18");

    CHECK(run_args({"sum", "--kind", "bigomega_gcd3", "--x", "0"}).code == kExitUsage);
    CHECK(run_args({"sum", "--x", "5"}).code == kExitUsage);
    CHECK(run_args({"sum", "--kind", "bogus", "--x", "5"}).code == kExitUsage);
    CHECK(run_args({"sum", "--kind", "bigomega_gcd3", "--x", "5", "--method", "slow"}).code == kExitUsage);
    CHECK(run_args({"nope"}).code == kExitUsage);
    CHECK(run_args({"sum", "--kind", "bigomega_gcd3", "--x", "2000000", "--method", "brute"}).code ==
          kExitResource);
    CHECK(run_args({"sum", "--kind", "bigomega_gcd3", "--x", "100", "--table-limit", "50"}).code == kExitUsage);
}

TEST_CASE("identities command") {
    auto ok = run_args({"identities", "--bound", "300", "--threads", "2"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.rfind("suite,checked,failed\n", 0) == 0);
    CHECK(std::count(ok.out.begin(), ok.out.end(), '\n') == 5);
    CHECK(ok.err.empty());

    auto trivial = run_args({"identities", "--bound", "1"});
    CHECK(trivial.code == kExitOk);

    auto broken = run_args({"identities", "--bound", "300", "--inject-fault", "tau3"});
    CHECK(broken.code == kExitCheckFailed);
    CHECK(broken.err.find("FAIL lemma1") != std::string::npos);
}

TEST_CASE("constants command") {
    auto json = run_args({"constants", "--prime-limit", "100000", "--format", "json"});
    REQUIRE(json.code == kExitOk);
    const auto parsed = nlohmann::json::parse(json.out);
    bool saw_c2 = false;
    for (const auto& c : parsed) {
        CHECK(c.contains("name"));
        CHECK(c.contains("cutoff"));
        CHECK(c.contains("value"));
        CHECK(c.contains("tail_bound"));
        CHECK(c.contains("formula"));
        if (c.at("name") == "C2") {
            saw_c2 = true;
            CHECK(c.at("value").get<double>() == doctest::Approx(0.1941).epsilon(1e-3));
        }
    }
    CHECK(saw_c2);
    CHECK(run_args({"constants", "--prime-limit", "999"}).code == kExitUsage);
}

TEST_CASE("compare command: rows, determinism, file output, config file") {
    auto a = run_args({"compare", "--theorem", "T2", "--grid", "3,4,5"});
    auto b = run_args({"compare", "--theorem", "T2", "--grid", "3,4,5"});
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 4);
    CHECK(a.err.find("max |normalized residual|") != std::string::npos);

    const fs::path out = temp_path("hsum_cli_out");
    auto to_file = run_args({"compare", "--theorem", "T2", "--grid", "3,4,5", "--out", out.string()});
    CHECK(to_file.code == kExitOk);
    CHECK(to_file.out.empty());
    {
        std::ifstream in(out, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == a.out);
    }
    fs::remove(out);

    const fs::path config = temp_path("hsum_cli_config");
    {
        std::ofstream f(config);
        f << R"({"theorem": "T3", "grid": "3,4", "format": "json"})";
    }
    auto from_file = run_args({"compare", "--config", config.string()});
    CHECK(from_file.code == kExitOk);
    CHECK(nlohmann::json::parse(from_file.out).size() == 2);
    auto override = run_args({"compare", "--config", config.string(), "--format", "csv"});
    CHECK(override.out.rfind("theorem,x,", 0) == 0);
    CHECK(override.out.find("T3,1000,") != std::string::npos);
    fs::remove(config);

    CHECK(run_args({"compare", "--theorem", "T7", "--grid", "3"}).code == kExitUsage);
    CHECK(run_args({"compare", "--config", "/nonexistent/file.json"}).code == kExitUsage);
}

TEST_CASE("cache directory is used and reused") {
    const fs::path dir = temp_path("hsum_cli_cache");
    auto first = run_args({"sum", "--kind", "bigomega_lcm3", "--x", "5000", "--cache-dir", dir.string()});
    auto second = run_args({"sum", "--kind", "bigomega_lcm3", "--x", "5000", "--cache-dir", dir.string()});
    CHECK(first.code == kExitOk);
    CHECK(first.out == second.out);
    CHECK(fs::exists(dir));
    CHECK_FALSE(fs::is_empty(dir));
    fs::remove_all(dir);
}
