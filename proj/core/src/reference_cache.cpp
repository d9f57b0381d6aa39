#include "reference_cache.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <system_error>
#include <vector>

namespace fracfd::detail {
namespace {

constexpr char kMagic[8] = {'F', 'R', 'A', 'C', 'R', 'E', 'F', '1'};

std::filesystem::path entry_path(const std::filesystem::path& dir, const std::string& key) {
    char name[40];
    std::snprintf(name, sizeof name, "ref-%016llx.bin",
                  static_cast<unsigned long long>(stable_hash(key)));
    return dir / name;
}

template <class T>
bool read_pod(std::istream& in, T& v) {
    return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof v));
}

template <class T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

}  // namespace

std::uint64_t stable_hash(std::string_view text) noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::optional<GridFunction> load_cached(const std::filesystem::path& dir, const std::string& key,
                                        const Grid& grid) {
    std::ifstream in(entry_path(dir, key), std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    if (!in.read(magic, sizeof magic) || !std::equal(magic, magic + 8, kMagic)) return std::nullopt;
    std::uint64_t key_len = 0;
    if (!read_pod(in, key_len) || key_len != key.size()) return std::nullopt;
    std::string stored(key_len, '\0');
    if (!in.read(stored.data(), static_cast<std::streamsize>(key_len)) || stored != key) {
        return std::nullopt;
    }
    std::uint64_t n = 0;
    if (!read_pod(in, n) || n != grid.intervals() + 1) return std::nullopt;
    std::vector<double> values(n);
    if (!in.read(reinterpret_cast<char*>(values.data()),
                 static_cast<std::streamsize>(n * sizeof(double)))) {
        return std::nullopt;
    }
    return GridFunction(grid, std::move(values));
}

void store_cached(const std::filesystem::path& dir, const std::string& key,
                  const GridFunction& values) {
    // A cache that cannot be written only costs time, so failures are ignored.
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto target = entry_path(dir, key);
    auto tmp = target;
    // Unique per writer, so concurrent stores of the same entry do not interleave.
    const auto salt = std::hash<std::thread::id>{}(std::this_thread::get_id()) ^ std::random_device{}();
    tmp += "." + std::to_string(salt) + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out.write(kMagic, sizeof kMagic);
        write_pod(out, static_cast<std::uint64_t>(key.size()));
        out.write(key.data(), static_cast<std::streamsize>(key.size()));
        write_pod(out, static_cast<std::uint64_t>(values.size()));
        out.write(reinterpret_cast<const char*>(values.values().data()),
                  static_cast<std::streamsize>(values.size() * sizeof(double)));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp, ec);
            return;
        }
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace fracfd::detail
