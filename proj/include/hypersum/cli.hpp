#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hsum::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

struct RunConfig {
    std::string command;  // identities | sum | constants | compare
    std::optional<std::uint64_t> x;
    std::vector<std::uint64_t> grid;
    std::optional<int> r;
    std::uint64_t prime_limit = 1'000'000;
    std::optional<std::uint64_t> table_limit;
    std::string kind;
    std::string method = "fast";  // brute | fast | both
    std::string format = "csv";   // csv | json
    std::string out;              // empty: stdout
    unsigned threads = 1;
    std::string cache_dir;
    std::string theorem = "T2";
    std::optional<std::uint64_t> bound;  // identities: uniform suite bound
    std::string inject_fault;            // identities test mode: "tau3"
};

/// Expands "3,4,5" into {10^3, 10^4, 10^5}.
std::vector<std::uint64_t> parse_decade_grid(const std::string& text);

int cmd_identities(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_constants(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags (and an optional --config JSON file; flags win), dispatches,
/// and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsum::cli
