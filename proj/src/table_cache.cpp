#include "hypersum/table_cache.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "hypersum/error.hpp"

namespace hsum {

namespace {

static_assert(std::endian::native == std::endian::little,
              "table cache I/O assumes a little-endian host");

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
        throw InvalidArgument("table cache " + path.string() + ": truncated header");
    }
    return v;
}

}  // namespace

void save_table(const std::filesystem::path& path, const FunctionTable& table) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot open " + tmp.string() + " for writing");
        out.write(kCacheMagic, sizeof(kCacheMagic));
        put<std::uint8_t>(out, kCacheFormatVersion);
        put<std::uint16_t>(out, static_cast<std::uint16_t>(table.name().size()));
        out.write(table.name().data(), static_cast<std::streamsize>(table.name().size()));
        put<std::uint64_t>(out, table.limit());
        put<std::uint8_t>(out, sizeof(FunctionTable::value_type));
        const auto values = table.values();
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size_bytes()));
        if (!out) throw ResourceError("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

FunctionTable load_table(const std::filesystem::path& path,
                         const std::optional<std::string>& expected_name,
                         std::optional<std::uint64_t> expected_limit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open table cache " + path.string());

    std::array<char, sizeof(kCacheMagic)> magic{};
    if (!in.read(magic.data(), magic.size()) ||
        std::memcmp(magic.data(), kCacheMagic, magic.size()) != 0) {
        throw InvalidArgument("table cache " + path.string() + ": bad magic");
    }
    const auto version = get<std::uint8_t>(in, path);
    if (version != kCacheFormatVersion) {
        throw InvalidArgument("table cache " + path.string() + ": format version " +
                              std::to_string(version) + ", expected " +
                              std::to_string(kCacheFormatVersion));
    }
    const auto name_len = get<std::uint16_t>(in, path);
    std::string name(name_len, '\0');
    if (!in.read(name.data(), name_len)) {
        throw InvalidArgument("table cache " + path.string() + ": truncated name");
    }
    const auto limit = get<std::uint64_t>(in, path);
    const auto width = get<std::uint8_t>(in, path);
    if (width != sizeof(FunctionTable::value_type)) {
        throw InvalidArgument("table cache " + path.string() + ": element width " +
                              std::to_string(width));
    }
    if (expected_name && name != *expected_name) {
        throw InvalidArgument("table cache " + path.string() + ": holds '" + name +
                              "', expected '" + *expected_name + "'");
    }
    if (expected_limit && limit != *expected_limit) {
        throw InvalidArgument("table cache " + path.string() + ": N = " + std::to_string(limit) +
                              ", expected " + std::to_string(*expected_limit));
    }
    if (limit > 0xFFFFFFFEull) throw InvalidArgument("table cache: N out of range");

    std::vector<FunctionTable::value_type> values(limit + 1);
    const auto bytes = static_cast<std::streamsize>(limit * sizeof(FunctionTable::value_type));
    if (!in.read(reinterpret_cast<char*>(values.data() + 1), bytes)) {
        throw InvalidArgument("table cache " + path.string() + ": truncated payload");
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw InvalidArgument("table cache " + path.string() + ": trailing bytes");
    }
    return FunctionTable(std::move(name), std::move(values));
}

TableCache::TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ResourceError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::filesystem::path TableCache::path_for(const std::string& name, std::uint64_t limit) const {
    return dir_ / (name + "_N" + std::to_string(limit) + "_v" +
                   std::to_string(kCacheFormatVersion) + ".hsum");
}

FunctionTable TableCache::load_or_build(const std::string& name, std::uint64_t limit,
                                        const std::function<FunctionTable()>& build) const {
    const auto path = path_for(name, limit);
    if (std::filesystem::exists(path)) {
        try {
            return load_table(path, name, limit);
        } catch (const InvalidArgument&) {
            // fall through and rebuild
        }
    }
    FunctionTable table = build();
    save_table(path, table);
    return table;
}

}  // namespace hsum
