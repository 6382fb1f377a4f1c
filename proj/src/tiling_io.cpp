#include "drum/tiling_io.hpp"

#include <sstream>

#include "drum/error.hpp"
#include "drum/group_io.hpp"

namespace drum {

TilingSpec parseTiling(std::string_view text, const std::string& sourceName) {
  TilingSpec spec;
  bool haveHeader = false;
  std::vector<int> usedAt;  // line that claimed (tile, color), 0 if free
  for (const auto& line : splitSourceLines(text)) {
    if (line.content.empty()) continue;
    std::istringstream in(line.content);
    std::string keyword;
    in >> keyword;
    if (!haveHeader) {
      std::string colorsWord, extra;
      long long n = 0, r = 0;
      if (keyword != "tiles" || !(in >> n >> colorsWord >> r) ||
          colorsWord != "colors" || (in >> extra)) {
        throw ParseError(sourceName, line.number, "expected 'tiles N colors r'");
      }
      if (n <= 0) throw ParseError(sourceName, line.number, "tile count must be positive");
      if (r < 3) throw ParseError(sourceName, line.number, "color count must be at least 3");
      spec.tileCount = static_cast<std::size_t>(n);
      spec.colorCount = static_cast<std::size_t>(r);
      usedAt.assign(spec.tileCount * spec.colorCount, 0);
      haveHeader = true;
      continue;
    }
    long long mu = 0, i = 0, j = 0;
    std::string extra;
    if (keyword != "edge" || !(in >> mu >> i >> j) || (in >> extra)) {
      throw ParseError(sourceName, line.number, "expected 'edge mu i j'");
    }
    if (mu < 1 || mu > static_cast<long long>(spec.colorCount)) {
      throw ParseError(sourceName, line.number, "color out of range");
    }
    const auto n = static_cast<long long>(spec.tileCount);
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw ParseError(sourceName, line.number, "tile index out of range");
    }
    if (i == j) throw ParseError(sourceName, line.number, "self-loop edge");
    for (long long v : {i, j}) {
      int& slot = usedAt[v * spec.colorCount + (mu - 1)];
      if (slot != 0) {
        throw ParseError(sourceName, line.number,
                         "tile " + std::to_string(v) + " already has a color-" +
                             std::to_string(mu) + " edge (line " +
                             std::to_string(slot) + ")");
      }
      slot = line.number;
    }
    spec.edges.push_back({static_cast<unsigned>(mu), static_cast<PointIndex>(i),
                          static_cast<PointIndex>(j)});
  }
  if (!haveHeader) {
    throw ParseError(sourceName, 1, "missing 'tiles N colors r' header");
  }
  return validate(spec);
}

TilingSpec readTiling(const std::filesystem::path& path) {
  return parseTiling(readTextFile(path), path.string());
}

std::string formatTiling(const TilingSpec& spec) {
  std::ostringstream out;
  out << "tiles " << spec.tileCount << " colors " << spec.colorCount << '\n';
  for (const auto& e : spec.edges) {
    out << "edge " << e.color << ' ' << e.i << ' ' << e.j << '\n';
  }
  return out.str();
}

}  // namespace drum
