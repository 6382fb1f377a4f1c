#include "drum/group_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "drum/error.hpp"

namespace drum {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::vector<SourceLine> splitSourceLines(std::string_view text) {
  std::vector<SourceLine> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto raw = text.substr(pos, end - pos);
    ++number;
    SourceLine line{number, {}, {}};
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      line.content = trim(raw.substr(0, hash));
      line.comment = trim(raw.substr(hash + 1));
    } else {
      line.content = trim(raw);
    }
    lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path dataPath(const std::string& relative) {
  if (const char* env = std::getenv("DRUM_DATA_DIR"); env && *env) {
    return std::filesystem::path(env) / relative;
  }
  return std::filesystem::path(DRUM_DATA_DIR) / relative;
}

GeneratorFixture parseGeneratorFixture(std::string_view text,
                                       const std::string& sourceName) {
  GeneratorFixture fixture;
  bool haveDegree = false;
  for (const auto& line : splitSourceLines(text)) {
    if (!line.comment.empty()) fixture.notes.push_back(line.comment);
    if (line.content.empty()) continue;
    std::istringstream in(line.content);
    if (!haveDegree) {
      std::string keyword;
      long long degree = 0;
      std::string extra;
      if (!(in >> keyword >> degree) || keyword != "degree" || degree <= 0 ||
          (in >> extra)) {
        throw ParseError(sourceName, line.number, "expected 'degree N'");
      }
      fixture.degree = static_cast<std::size_t>(degree);
      haveDegree = true;
      continue;
    }
    std::vector<PointIndex> images;
    long long v = 0;
    while (in >> v) {
      if (v < 0) throw ParseError(sourceName, line.number, "negative point");
      images.push_back(static_cast<PointIndex>(v));
    }
    if (!in.eof()) throw ParseError(sourceName, line.number, "non-integer token");
    if (images.size() != fixture.degree) {
      throw ParseError(sourceName, line.number,
                       "expected " + std::to_string(fixture.degree) + " images");
    }
    try {
      fixture.generators.emplace_back(std::move(images));
    } catch (const Error& e) {
      throw ParseError(sourceName, line.number, e.what());
    }
  }
  if (!haveDegree) throw ParseError(sourceName, 1, "missing 'degree N' header");
  return fixture;
}

GeneratorFixture readGeneratorFixture(const std::filesystem::path& path) {
  return parseGeneratorFixture(readTextFile(path), path.string());
}

std::string formatGeneratorFixture(const GeneratorFixture& fixture) {
  std::ostringstream out;
  for (const auto& note : fixture.notes) out << "# " << note << '\n';
  out << "degree " << fixture.degree << '\n';
  for (const auto& g : fixture.generators) {
    for (std::size_t i = 0; i < g.degree(); ++i) {
      out << (i ? " " : "") << g(static_cast<PointIndex>(i));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace drum
