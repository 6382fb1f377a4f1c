#pragma once

#include <random>
#include <vector>

#include "drum/tiling.hpp"

namespace drum::test {

// Random validated spec. Half of the draws grow a random tree (so trees are
// well represented); the rest scatter random matching edges.
inline TilingSpec randomSpec(std::mt19937_64& rng, std::size_t maxTiles = 13,
                             std::size_t maxColors = 6) {
  std::uniform_int_distribution<std::size_t> tilesDist(1, maxTiles);
  std::uniform_int_distribution<std::size_t> colorsDist(3, maxColors);
  const std::size_t n = tilesDist(rng);
  const std::size_t r = colorsDist(rng);
  std::vector<bool> used(n * r, false);
  TilingSpec spec{n, r, {}};
  const auto tryAdd = [&](unsigned c, PointIndex i, PointIndex j) {
    if (i == j || used[i * r + c - 1] || used[j * r + c - 1]) return false;
    used[i * r + c - 1] = used[j * r + c - 1] = true;
    spec.edges.push_back({c, std::min(i, j), std::max(i, j)});
    return true;
  };
  std::uniform_int_distribution<unsigned> color(1, static_cast<unsigned>(r));
  if (std::bernoulli_distribution(0.5)(rng)) {
    for (PointIndex v = 1; v < n; ++v) {
      std::uniform_int_distribution<PointIndex> parent(0, v - 1);
      for (int attempt = 0; attempt < 64; ++attempt) {
        if (tryAdd(color(rng), parent(rng), v)) break;
      }
    }
  } else {
    std::uniform_int_distribution<PointIndex> tile(0, static_cast<PointIndex>(n - 1));
    std::uniform_int_distribution<std::size_t> count(0, n * r / 2 + 1);
    for (std::size_t k = count(rng); k > 0; --k) tryAdd(color(rng), tile(rng), tile(rng));
  }
  return validate(spec);
}

}  // namespace drum::test
