#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "drum/geometry.hpp"

namespace drum {

/// One `x y` pair per line (each coordinate "p", "p/q" or a decimal),
/// counterclockwise; `#` comments.
Polygon<Rational> parsePolygon(std::string_view text,
                               const std::string& sourceName = "<text>");
Polygon<Rational> readPolygon(const std::filesystem::path& path);
std::string formatPolygon(const Polygon<Rational>& poly);

}  // namespace drum
