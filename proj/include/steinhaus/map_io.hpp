#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "steinhaus/core.hpp"

namespace steinhaus {

/// Map document: {"m": <int>, "entries": [[a,b,c], ...]} with m^3 entries in
/// lexicographic cell order. A null entry marks an unassigned cell.
PartialMap parse_map(std::string_view text);
std::string format_map(const PartialMap& L);

/// Point-set document: one point per line, "a/b c/d e/f". Bare integers are
/// read as n/1. Blank lines and lines starting with '#' are skipped.
std::vector<RationalPoint> parse_point_set(std::string_view text);
std::string format_point_set(const std::vector<RationalPoint>& points);

PartialMap load_map(const std::filesystem::path& path);
void save_map(const std::filesystem::path& path, const PartialMap& L);
std::vector<RationalPoint> load_point_set(const std::filesystem::path& path);
void save_point_set(const std::filesystem::path& path, const std::vector<RationalPoint>& points);

}  // namespace steinhaus
