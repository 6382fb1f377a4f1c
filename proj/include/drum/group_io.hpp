#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "drum/permutation.hpp"

namespace drum {

/// Generator fixture: `degree N`, then one permutation per line in one-line
/// image notation. `#` starts a comment; comment text is kept as provenance.
struct GeneratorFixture {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<std::string> notes;
};

GeneratorFixture parseGeneratorFixture(std::string_view text,
                                       const std::string& sourceName = "<text>");
GeneratorFixture readGeneratorFixture(const std::filesystem::path& path);
std::string formatGeneratorFixture(const GeneratorFixture& fixture);

/// Path of a file shipped under the data/ directory.
std::filesystem::path dataPath(const std::string& relative);

/// Reads a whole file; throws Error(Io).
std::string readTextFile(const std::filesystem::path& path);

/// Splits text into lines with comments stripped, keeping 1-based numbers.
struct SourceLine {
  int number = 0;
  std::string content;  // comment removed, whitespace trimmed
  std::string comment;  // text after '#', trimmed
};
std::vector<SourceLine> splitSourceLines(std::string_view text);

}  // namespace drum
