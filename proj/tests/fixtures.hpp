#pragma once

#include <string>
#include <vector>

#include "drum/group_io.hpp"
#include "drum/permgroup.hpp"
#include "drum/tiling.hpp"
#include "drum/tiling_io.hpp"

namespace drum::test {

inline GeneratorFixture groupFixture(const std::string& name) {
  return readGeneratorFixture(dataPath("groups/" + name + ".perm"));
}

inline PermutationGroup namedGroup(const std::string& name) {
  return closure(groupFixture(name).generators);
}

inline TilingSpec tilingFixture(const std::string& name) {
  return readTiling(dataPath("tilings/" + name + ".til"));
}

inline Permutation cycle(std::size_t degree, std::vector<PointIndex> points) {
  return Permutation::fromCycles(degree, {std::move(points)});
}

inline PermutationGroup symmetricGroup(std::size_t n) {
  std::vector<PointIndex> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<PointIndex>(i);
  return closure({cycle(n, {0, 1}), cycle(n, all)});
}

// The Fano lines {i, i+1, i+3} mod 7 as point sets.
inline std::vector<PointIndex> fanoLine(PointIndex i) {
  return {i % 7, (i + 1) % 7, (i + 3) % 7};
}

// Tile i becomes tile perm[i].
inline TilingSpec relabel(const TilingSpec& s, const std::vector<PointIndex>& perm) {
  TilingSpec out = s;
  for (auto& e : out.edges) {
    e.i = perm[e.i];
    e.j = perm[e.j];
  }
  return validate(out);
}

}  // namespace drum::test
