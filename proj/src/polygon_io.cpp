#include "drum/polygon_io.hpp"

#include <sstream>

#include "drum/error.hpp"
#include "drum/group_io.hpp"

namespace drum {

Polygon<Rational> parsePolygon(std::string_view text, const std::string& sourceName) {
  Polygon<Rational> poly;
  for (const auto& line : splitSourceLines(text)) {
    if (line.content.empty()) continue;
    std::istringstream in(line.content);
    std::string x, y, extra;
    if (!(in >> x >> y) || (in >> extra)) {
      throw ParseError(sourceName, line.number, "expected 'x y'");
    }
    try {
      poly.push_back({parseRational(x), parseRational(y)});
    } catch (const Error& e) {
      throw ParseError(sourceName, line.number, e.what());
    }
  }
  if (poly.size() < 3) throw ParseError(sourceName, 1, "polygon needs at least 3 vertices");
  return poly;
}

Polygon<Rational> readPolygon(const std::filesystem::path& path) {
  return parsePolygon(readTextFile(path), path.string());
}

std::string formatPolygon(const Polygon<Rational>& poly) {
  std::ostringstream out;
  for (const auto& p : poly) out << toString(p.x) << ' ' << toString(p.y) << '\n';
  return out.str();
}

}  // namespace drum
