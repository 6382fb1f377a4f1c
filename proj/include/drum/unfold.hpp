#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "drum/geometry.hpp"
#include "drum/tiling.hpp"

namespace drum {

/// Base r-gon, counterclockwise. Side k joins vertex k and k+1 and carries
/// color k+1.
template <class T>
struct BaseTile {
  Polygon<T> vertices;

  std::size_t sides() const noexcept { return vertices.size(); }
  /// Endpoints of the side with the given (1-based) color.
  std::pair<Point2<T>, Point2<T>> side(unsigned color) const {
    return {vertices[color - 1], vertices[color % vertices.size()]};
  }
};

/// The right triangle (0,0), (1,0), (0,1): color 1 bottom, 2 hypotenuse,
/// 3 left.
BaseTile<Rational> defaultTriangle();

/// Regular r-gon with unit side, first side on the x axis.
BaseTile<double> regularTile(std::size_t r);

/// Throws Error(InvalidInput) unless the tile is a simple counterclockwise
/// polygon with at least three vertices.
template <class T>
void requireValidTile(const BaseTile<T>& tile);

template <class T>
struct PlacedTile {
  std::size_t tileIndex = 0;
  Isometry<T> transform;

  Polygon<T> vertices(const BaseTile<T>& tile) const;
};

/// Breadth-first from `root` (neighbors in color order); each tile is the
/// reflection of its parent across their shared side. Result is indexed by
/// tile. Requires a tree.
template <class T>
std::vector<PlacedTile<T>> unfold(const TilingSpec& spec, const BaseTile<T>& tile,
                                  std::size_t root = 0);

/// True iff the placed tiles have pairwise disjoint interiors. Exact for
/// Rational; for double, interiors are shrunk by 1e-9 of the tile diameter.
template <class T>
bool checkEmbedding(const std::vector<PlacedTile<T>>& placements,
                    const BaseTile<T>& tile);

/// Outer boundary of the union of embedded tiles: glued sides cancel,
/// collinear vertices are merged, the cycle is counterclockwise and starts at
/// the lexicographically smallest vertex. Throws Error(InvalidInput) when the
/// tiles overlap or the union is not bounded by one simple cycle.
template <class T>
Polygon<T> boundaryPolygon(const std::vector<PlacedTile<T>>& placements,
                           const BaseTile<T>& tile);

/// Pairs of tiles that are not glued in `spec` yet share a boundary segment
/// of positive length. Such contacts merge in the planar union.
template <class T>
std::vector<std::pair<std::size_t, std::size_t>> ungluedContacts(
    const TilingSpec& spec, const std::vector<PlacedTile<T>>& placements,
    const BaseTile<T>& tile);

template <class T>
struct UnfoldedDomain {
  std::vector<PlacedTile<T>> placements;
  Polygon<T> boundary;  // empty unless embedded
  bool embedded = false;
  std::vector<std::pair<std::size_t, std::size_t>> contacts;
};

/// unfold + checkEmbedding + boundaryPolygon. `embedded` is false (and the
/// boundary empty) when tiles overlap or the union is not simply connected.
template <class T>
UnfoldedDomain<T> buildDomain(const TilingSpec& spec, const BaseTile<T>& tile,
                              std::size_t root = 0);

/// Deterministic SVG: tile outlines, glued sides colored by side color,
/// boundary drawn heavy.
template <class T>
std::string renderSvg(const UnfoldedDomain<T>& domain, const TilingSpec& spec,
                      const BaseTile<T>& tile);

template <class T>
void exportSvg(const UnfoldedDomain<T>& domain, const TilingSpec& spec,
               const BaseTile<T>& tile, const std::filesystem::path& path);

}  // namespace drum
