#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fracfd/grid.hpp"

namespace fracfd::detail {

/// FNV-1a, stable across platforms and runs.
[[nodiscard]] std::uint64_t stable_hash(std::string_view text) noexcept;

/// Cache entries store the full key text, so a hash collision reads as a miss.
[[nodiscard]] std::optional<GridFunction> load_cached(const std::filesystem::path& dir,
                                                      const std::string& key, const Grid& grid);
void store_cached(const std::filesystem::path& dir, const std::string& key,
                  const GridFunction& values);

}  // namespace fracfd::detail
