#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "drum/tiling.hpp"

namespace drum {

/// Tiling text format:
///
///   tiles N colors r
///   edge μ i j
///   ...
///
/// `#` starts a comment. Parsing validates the matching condition and throws
/// ParseError pointing at the offending line.
TilingSpec parseTiling(std::string_view text,
                       const std::string& sourceName = "<text>");
TilingSpec readTiling(const std::filesystem::path& path);

/// Canonical text of a validated spec (edges in stored order).
std::string formatTiling(const TilingSpec& spec);

}  // namespace drum
