#include "drum/unfold.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "drum/error.hpp"

namespace drum {

namespace {

template <class T>
T absValue(const T& x) {
  return x < 0 ? T(-x) : x;
}

double toDoubleValue(const Rational& x) { return x.get_d(); }
double toDoubleValue(double x) { return x; }

/// Comparison slack: zero for exact scalars.
Rational slackFor(const BaseTile<Rational>&) { return Rational(0); }
double slackFor(const BaseTile<double>& tile) {
  double diam = 0;
  for (const auto& p : tile.vertices) {
    for (const auto& q : tile.vertices) {
      diam = std::max(diam, std::hypot(p.x - q.x, p.y - q.y));
    }
  }
  return 1e-9 * diam;
}

/// Slack in the units of projections onto the unnormalized direction n.
Rational projectedSlack(const Point2<Rational>&, const Rational&) { return Rational(0); }
double projectedSlack(const Point2<double>& n, double eps) {
  return eps * std::hypot(n.x, n.y);
}

template <class T>
bool samePoint(const Point2<T>& a, const Point2<T>& b, const T& eps) {
  return absValue(T(a.x - b.x)) <= eps && absValue(T(a.y - b.y)) <= eps;
}

template <class T>
T tileDiameterSquared(const BaseTile<T>& tile) {
  T best{};
  for (const auto& p : tile.vertices) {
    for (const auto& q : tile.vertices) {
      const auto d = q - p;
      const T len2 = dot(d, d);
      if (best < len2) best = len2;
    }
  }
  return best;
}

template <class T>
bool segmentsProperlyCross(const Point2<T>& a, const Point2<T>& b,
                           const Point2<T>& c, const Point2<T>& d) {
  const auto sgn = [](const T& v) { return (v > 0) - (v < 0); };
  const int o1 = sgn(cross(b - a, c - a)), o2 = sgn(cross(b - a, d - a));
  const int o3 = sgn(cross(d - c, a - c)), o4 = sgn(cross(d - c, b - c));
  return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Ear clipping of a simple counterclockwise polygon.
template <class T>
std::vector<std::array<Point2<T>, 3>> triangulate(const Polygon<T>& poly) {
  std::vector<std::size_t> idx(poly.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::array<Point2<T>, 3>> out;
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& a = poly[idx[(k + idx.size() - 1) % idx.size()]];
      const auto& b = poly[idx[k]];
      const auto& c = poly[idx[(k + 1) % idx.size()]];
      if (!(cross(b - a, c - b) > 0)) continue;  // reflex or straight
      bool containsOther = false;
      for (std::size_t m = 0; m < idx.size() && !containsOther; ++m) {
        const auto& p = poly[idx[m]];
        if (p == a || p == b || p == c) continue;
        containsOther = cross(b - a, p - a) >= 0 && cross(c - b, p - b) >= 0 &&
                        cross(a - c, p - c) >= 0;
      }
      if (containsOther) continue;
      out.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped) fail(ErrorKind::InvalidInput, "tile triangulation failed");
  }
  out.push_back({poly[idx[0]], poly[idx[1]], poly[idx[2]]});
  return out;
}

/// Separating-axis test on two convex polygons: true iff their interiors
/// intersect (contact along an edge or at a point does not count).
template <class T, std::size_t A, std::size_t B>
bool convexInteriorsOverlap(const std::array<Point2<T>, A>& p,
                            const std::array<Point2<T>, B>& q, const T& eps) {
  const auto separatedAlong = [&](const Point2<T>& n) {
    T minP = dot(n, p[0]), maxP = minP, minQ = dot(n, q[0]), maxQ = minQ;
    for (const auto& v : p) {
      const T s = dot(n, v);
      if (s < minP) minP = s;
      if (s > maxP) maxP = s;
    }
    for (const auto& v : q) {
      const T s = dot(n, v);
      if (s < minQ) minQ = s;
      if (s > maxQ) maxQ = s;
    }
    const T slack = projectedSlack(n, eps);
    return maxP <= minQ + slack || maxQ <= minP + slack;
  };
  const auto edges = [&](const auto& poly) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto e = poly[(i + 1) % poly.size()] - poly[i];
      if (separatedAlong(Point2<T>{T(-e.y), e.x})) return true;
    }
    return false;
  };
  return !(edges(p) || edges(q));
}

template <class T>
Polygon<T> counterclockwiseImage(const PlacedTile<T>& placed,
                                 const BaseTile<T>& tile) {
  auto poly = placed.vertices(tile);
  if (placed.transform.orientationReversing()) std::reverse(poly.begin(), poly.end());
  return poly;
}

template <class T>
class VertexRegistry {
 public:
  explicit VertexRegistry(T eps) : eps_(std::move(eps)) {}

  std::size_t id(const Point2<T>& p) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (samePoint(points_[i], p, eps_)) return i;
    }
    points_.push_back(p);
    return points_.size() - 1;
  }
  const Point2<T>& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }

 private:
  T eps_;
  Polygon<T> points_;
};

}  // namespace

BaseTile<Rational> defaultTriangle() {
  return {{{Rational(0), Rational(0)}, {Rational(1), Rational(0)},
           {Rational(0), Rational(1)}}};
}

BaseTile<double> regularTile(std::size_t r) {
  if (r < 3) fail(ErrorKind::InvalidInput, "regular tile needs at least 3 sides");
  BaseTile<double> tile;
  Point2<double> p{0.0, 0.0};
  for (std::size_t k = 0; k < r; ++k) {
    tile.vertices.push_back(p);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(r);
    p = {p.x + std::cos(angle), p.y + std::sin(angle)};
  }
  return tile;
}

template <class T>
void requireValidTile(const BaseTile<T>& tile) {
  const auto& v = tile.vertices;
  if (v.size() < 3) fail(ErrorKind::InvalidInput, "tile needs at least 3 vertices");
  if (!(doubledSignedArea(v) > 0)) {
    fail(ErrorKind::InvalidInput, "tile must be counterclockwise with positive area");
  }
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) fail(ErrorKind::InvalidInput, "tile has a repeated vertex");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segmentsProperlyCross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        fail(ErrorKind::InvalidInput, "tile is not a simple polygon");
      }
    }
  }
}

template <class T>
Polygon<T> PlacedTile<T>::vertices(const BaseTile<T>& tile) const {
  Polygon<T> out;
  out.reserve(tile.vertices.size());
  for (const auto& p : tile.vertices) out.push_back(transform.apply(p));
  return out;
}

template <class T>
std::vector<PlacedTile<T>> unfold(const TilingSpec& spec, const BaseTile<T>& tile,
                                  std::size_t root) {
  if (!isTree(spec)) fail(ErrorKind::InvalidInput, "unfold requires a tree tiling");
  if (tile.sides() != spec.colorCount) {
    fail(ErrorKind::InvalidInput, "tile side count does not match color count");
  }
  if (root >= spec.tileCount) fail(ErrorKind::InvalidInput, "root tile out of range");
  requireValidTile(tile);

  const auto thetas = involutions(spec);
  std::vector<PlacedTile<T>> placed(spec.tileCount);
  std::vector<bool> done(spec.tileCount, false);
  std::deque<std::size_t> queue{root};
  placed[root].tileIndex = root;
  done[root] = true;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (unsigned mu = 1; mu <= spec.colorCount; ++mu) {
      const std::size_t j = thetas[mu - 1](static_cast<PointIndex>(i));
      if (j == i || done[j]) continue;
      const auto [p, q] = tile.side(mu);
      const auto& parent = placed[i].transform;
      const auto mirror =
          Isometry<T>::reflectionAcross(parent.apply(p), parent.apply(q));
      placed[j].tileIndex = j;
      placed[j].transform = mirror.after(parent);
      done[j] = true;
      queue.push_back(j);
    }
  }
  return placed;
}

template <class T>
bool checkEmbedding(const std::vector<PlacedTile<T>>& placements,
                    const BaseTile<T>& tile) {
  const T eps = slackFor(tile);
  const auto baseTriangles = triangulate(tile.vertices);
  std::vector<std::vector<std::array<Point2<T>, 3>>> pieces;
  std::vector<std::array<T, 4>> boxes;  // minx, maxx, miny, maxy
  for (const auto& placed : placements) {
    auto& tris = pieces.emplace_back();
    for (const auto& t : baseTriangles) {
      tris.push_back({placed.transform.apply(t[0]), placed.transform.apply(t[1]),
                      placed.transform.apply(t[2])});
    }
    const auto poly = placed.vertices(tile);
    std::array<T, 4> box{poly[0].x, poly[0].x, poly[0].y, poly[0].y};
    for (const auto& v : poly) {
      if (v.x < box[0]) box[0] = v.x;
      if (v.x > box[1]) box[1] = v.x;
      if (v.y < box[2]) box[2] = v.y;
      if (v.y > box[3]) box[3] = v.y;
    }
    boxes.push_back(box);
  }
  for (std::size_t i = 0; i < placements.size(); ++i) {
    for (std::size_t j = i + 1; j < placements.size(); ++j) {
      const auto& a = boxes[i];
      const auto& b = boxes[j];
      if (a[1] <= b[0] + eps || b[1] <= a[0] + eps || a[3] <= b[2] + eps ||
          b[3] <= a[2] + eps) {
        continue;
      }
      for (const auto& s : pieces[i]) {
        for (const auto& t : pieces[j]) {
          if (convexInteriorsOverlap(s, t, eps)) return false;
        }
      }
    }
  }
  return true;
}

template <class T>
Polygon<T> boundaryPolygon(const std::vector<PlacedTile<T>>& placements,
                           const BaseTile<T>& tile) {
  if (placements.empty()) fail(ErrorKind::InvalidInput, "no tiles to bound");
  if (!checkEmbedding(placements, tile)) {
    fail(ErrorKind::InvalidInput, "tiles overlap; the unfolding does not embed");
  }
  const T eps = slackFor(tile);
  VertexRegistry<T> registry(eps);
  std::vector<std::vector<std::size_t>> loops;
  for (const auto& placed : placements) {
    auto& loop = loops.emplace_back();
    for (const auto& p : counterclockwiseImage(placed, tile)) loop.push_back(registry.id(p));
  }

  // Split every side at vertices lying inside it, then cancel opposite pairs.
  std::map<std::pair<std::size_t, std::size_t>, int> directed;
  const T eps2 = eps * eps;
  for (const auto& loop : loops) {
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const std::size_t u = loop[k], v = loop[(k + 1) % loop.size()];
      const auto a = registry[u], d = registry[v] - registry[u];
      const T len2 = dot(d, d);
      std::vector<std::pair<T, std::size_t>> cuts;
      for (std::size_t w = 0; w < registry.size(); ++w) {
        if (w == u || w == v) continue;
        const auto rel = registry[w] - a;
        const T c = cross(d, rel);
        if (c * c > eps2 * len2) continue;
        const T t = dot(d, rel);
        if (t > 0 && t < len2 && !samePoint(registry[w], registry[u], eps) &&
            !samePoint(registry[w], registry[v], eps)) {
          cuts.emplace_back(t, w);
        }
      }
      std::sort(cuts.begin(), cuts.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      std::size_t from = u;
      for (const auto& cut : cuts) {
        ++directed[{from, cut.second}];
        from = cut.second;
      }
      ++directed[{from, v}];
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> outgoing;
  std::size_t remaining = 0;
  for (const auto& [edge, count] : directed) {
    const auto rev = directed.find({edge.second, edge.first});
    const int net = count - (rev == directed.end() ? 0 : rev->second);
    if (net > 1) fail(ErrorKind::InvalidInput, "boundary side covered twice");
    if (net == 1) {
      outgoing[edge.first].push_back(edge.second);
      ++remaining;
    }
  }
  for (const auto& [v, outs] : outgoing) {
    if (outs.size() != 1) {
      fail(ErrorKind::InvalidInput, "union boundary touches itself; not a simple polygon");
    }
  }
  std::size_t start = outgoing.begin()->first;
  for (const auto& [v, outs] : outgoing) {
    if (lexLess(registry[v], registry[start])) start = v;
  }
  std::vector<std::size_t> cycle{start};
  for (std::size_t v = outgoing[start].front(); v != start; v = outgoing[v].front()) {
    cycle.push_back(v);
    if (cycle.size() > remaining) break;
  }
  if (cycle.size() != remaining) {
    fail(ErrorKind::InvalidInput, "union has a hole; boundary is not a single cycle");
  }

  Polygon<T> poly;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const auto& prev = registry[cycle[(k + cycle.size() - 1) % cycle.size()]];
    const auto& cur = registry[cycle[k]];
    const auto& next = registry[cycle[(k + 1) % cycle.size()]];
    const auto in = cur - prev, out = next - cur;
    const T c = cross(in, out);
    const bool straight = c * c <= eps2 * dot(in, in) * 4 && dot(in, out) > 0;
    if (!straight) poly.push_back(cur);
  }
  if (!(doubledSignedArea(poly) > 0)) {
    fail(ErrorKind::InvalidInput, "boundary orientation check failed");
  }
  return poly;
}

template <class T>
std::vector<std::pair<std::size_t, std::size_t>> ungluedContacts(
    const TilingSpec& spec, const std::vector<PlacedTile<T>>& placements,
    const BaseTile<T>& tile) {
  const T eps = slackFor(tile);
  std::set<std::pair<std::size_t, std::size_t>> glued;
  for (const auto& e : spec.edges) glued.insert({e.i, e.j});
  std::vector<Polygon<T>> polys;
  for (const auto& p : placements) polys.push_back(p.vertices(tile));

  const auto overlapLength = [&](const Point2<T>& a, const Point2<T>& b,
                                 const Point2<T>& c, const Point2<T>& d) {
    const auto dir = b - a;
    const T len2 = dot(dir, dir);
    const T eps2 = eps * eps * len2;
    const T c1 = cross(dir, c - a), c2 = cross(dir, d - a);
    if (c1 * c1 > eps2 || c2 * c2 > eps2) return false;
    T lo = dot(dir, c - a), hi = dot(dir, d - a);
    if (hi < lo) std::swap(lo, hi);
    const T from = lo > 0 ? lo : T(0);
    const T to = hi < len2 ? hi : len2;
    return to - from > eps * len2;
  };

  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (glued.contains({i, j})) continue;
      bool touching = false;
      for (std::size_t s = 0; s < polys[i].size() && !touching; ++s) {
        for (std::size_t t = 0; t < polys[j].size() && !touching; ++t) {
          touching = overlapLength(polys[i][s], polys[i][(s + 1) % polys[i].size()],
                                   polys[j][t], polys[j][(t + 1) % polys[j].size()]);
        }
      }
      if (touching) out.emplace_back(i, j);
    }
  }
  return out;
}

template <class T>
UnfoldedDomain<T> buildDomain(const TilingSpec& spec, const BaseTile<T>& tile,
                              std::size_t root) {
  UnfoldedDomain<T> domain;
  domain.placements = unfold(spec, tile, root);
  domain.contacts = ungluedContacts(spec, domain.placements, tile);
  if (!checkEmbedding(domain.placements, tile)) return domain;
  try {
    domain.boundary = boundaryPolygon(domain.placements, tile);
    domain.embedded = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidInput) throw;
  }
  return domain;
}

template <class T>
std::string renderSvg(const UnfoldedDomain<T>& domain, const TilingSpec& spec,
                      const BaseTile<T>& tile) {
  static constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c",
                                             "#ff7f0e", "#9467bd", "#8c564b",
                                             "#e377c2", "#17becf"};
  std::vector<Polygon<double>> tiles;
  double minX = 1e300, maxX = -1e300, minY = 1e300, maxY = -1e300;
  for (const auto& placed : domain.placements) {
    auto& poly = tiles.emplace_back();
    for (const auto& p : placed.vertices(tile)) {
      poly.push_back({toDoubleValue(p.x), toDoubleValue(p.y)});
      minX = std::min(minX, poly.back().x);
      maxX = std::max(maxX, poly.back().x);
      minY = std::min(minY, poly.back().y);
      maxY = std::max(maxY, poly.back().y);
    }
  }
  const double size = 560.0, margin = 20.0;
  const double scale = size / std::max({maxX - minX, maxY - minY, 1e-12});
  const double width = (maxX - minX) * scale + 2 * margin;
  const double height = (maxY - minY) * scale + 2 * margin;
  char buf[64];
  const auto coord = [&](const Point2<double>& p) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", margin + (p.x - minX) * scale,
                  margin + (maxY - p.y) * scale);
    return std::string(buf);
  };
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  const auto points = [&](const Polygon<double>& poly) {
    std::string s;
    for (std::size_t i = 0; i < poly.size(); ++i) s += (i ? " " : "") + coord(poly[i]);
    return s;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
      << num(height) << "\">\n";
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    out << "  <polygon class=\"tile\" data-tile=\"" << domain.placements[i].tileIndex
        << "\" points=\"" << points(tiles[i])
        << "\" fill=\"#f2f2f2\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }
  for (const auto& e : spec.edges) {
    const auto [p, q] = tile.side(e.color);
    const auto& t = domain.placements[e.i].transform;
    const auto a = t.apply(p), b = t.apply(q);
    const Point2<double> da{toDoubleValue(a.x), toDoubleValue(a.y)};
    const Point2<double> db{toDoubleValue(b.x), toDoubleValue(b.y)};
    const auto ca = coord(da), cb = coord(db);
    const auto comma = [](const std::string& s) { return s.find(','); };
    out << "  <line class=\"glued\" data-color=\"" << e.color << "\" x1=\""
        << ca.substr(0, comma(ca)) << "\" y1=\"" << ca.substr(comma(ca) + 1)
        << "\" x2=\"" << cb.substr(0, comma(cb)) << "\" y2=\""
        << cb.substr(comma(cb) + 1) << "\" stroke=\""
        << kPalette[(e.color - 1) % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n";
  }
  if (!domain.boundary.empty()) {
    Polygon<double> boundary;
    for (const auto& p : domain.boundary) {
      boundary.push_back({toDoubleValue(p.x), toDoubleValue(p.y)});
    }
    out << "  <polygon class=\"boundary\" points=\"" << points(boundary)
        << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"3\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

template <class T>
void exportSvg(const UnfoldedDomain<T>& domain, const TilingSpec& spec,
               const BaseTile<T>& tile, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::Io, "cannot write " + path.string());
  file << renderSvg(domain, spec, tile);
  if (!file) fail(ErrorKind::Io, "write failed for " + path.string());
}

#define DRUM_INSTANTIATE_UNFOLD(T)                                                 \
  template void requireValidTile<T>(const BaseTile<T>&);                           \
  template struct PlacedTile<T>;                                                   \
  template std::vector<PlacedTile<T>> unfold<T>(const TilingSpec&,                 \
                                                const BaseTile<T>&, std::size_t);  \
  template bool checkEmbedding<T>(const std::vector<PlacedTile<T>>&,               \
                                  const BaseTile<T>&);                             \
  template Polygon<T> boundaryPolygon<T>(const std::vector<PlacedTile<T>>&,        \
                                         const BaseTile<T>&);                      \
  template std::vector<std::pair<std::size_t, std::size_t>> ungluedContacts<T>(    \
      const TilingSpec&, const std::vector<PlacedTile<T>>&, const BaseTile<T>&);   \
  template UnfoldedDomain<T> buildDomain<T>(const TilingSpec&, const BaseTile<T>&, \
                                            std::size_t);                          \
  template std::string renderSvg<T>(const UnfoldedDomain<T>&, const TilingSpec&,   \
                                    const BaseTile<T>&);                           \
  template void exportSvg<T>(const UnfoldedDomain<T>&, const TilingSpec&,          \
                             const BaseTile<T>&, const std::filesystem::path&);

DRUM_INSTANTIATE_UNFOLD(Rational)
DRUM_INSTANTIATE_UNFOLD(double)

#undef DRUM_INSTANTIATE_UNFOLD

}  // namespace drum
