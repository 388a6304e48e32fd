#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "hypersum/arith_core.hpp"

namespace hsum {

// On-disk layout, all integers little-endian:
//   "HSUM1"            5 bytes magic
//   format version     u8
//   name length        u16, followed by that many name bytes
//   N                  u64
//   element width      u8 (bytes per value; 4)
//   values             N signed integers for n = 1..N
inline constexpr char kCacheMagic[5] = {'H', 'S', 'U', 'M', '1'};
inline constexpr std::uint8_t kCacheFormatVersion = 1;

void save_table(const std::filesystem::path& path, const FunctionTable& table);

/// Reads a cached table. Throws InvalidArgument on a bad header, a name or
/// N mismatch (when expected values are given), or a truncated payload.
FunctionTable load_table(const std::filesystem::path& path,
                         const std::optional<std::string>& expected_name = std::nullopt,
                         std::optional<std::uint64_t> expected_limit = std::nullopt);

/// Directory of cached tables keyed by (function, N, format version).
class TableCache {
public:
    explicit TableCache(std::filesystem::path dir);

    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }
    [[nodiscard]] std::filesystem::path path_for(const std::string& name, std::uint64_t limit) const;

    // Returns the cached table if present and valid; otherwise builds it
    // and writes it back. A stale or corrupt file is rebuilt, not trusted.
    FunctionTable load_or_build(const std::string& name, std::uint64_t limit,
                                const std::function<FunctionTable()>& build) const;

private:
    std::filesystem::path dir_;
};

}  // namespace hsum
