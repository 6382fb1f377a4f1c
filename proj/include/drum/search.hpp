#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "drum/permgroup.hpp"
#include "drum/tiling.hpp"
#include "drum/transplant.hpp"

namespace drum {

enum class InvolutionSource {
  PartialMatchings,  // every properly colored tree on N tiles
  GroupInvolutions,  // r-tuples of involutions (or the identity) of `group`
};

struct SearchConfig {
  std::size_t tileCount = 7;
  std::size_t colorCount = 3;
  InvolutionSource source = InvolutionSource::PartialMatchings;
  std::optional<PermutationGroup> group;  // required for GroupInvolutions
  bool modColorPermutation = true;
  bool canonicalize = true;
  std::size_t nodeBudget = 5'000'000;
  std::size_t maxTileCount = 13;
};

struct TreeEnumeration {
  std::vector<TilingSpec> specs;  // canonical forms, ascending
  std::size_t nodesVisited = 0;
  bool complete = true;  // false once the node budget ran out
};

/// Valid tree specs on N tiles with r colors up to relabeling (and color
/// permutation when enabled). Throws Error(BudgetExceeded) if the budget
/// runs out and `allowPartial` is false.
TreeEnumeration enumerateTreeTilings(const SearchConfig& cfg, bool allowPartial = false);

/// Canonical representative of the relabeling class (and color class when
/// `modColorPermutation`). For connected specs it is the lex-minimal edge
/// list among color-ordered breadth-first labelings; components of a
/// disconnected spec are canonicalized separately and laid out by size.
TilingSpec canonicalForm(const TilingSpec& spec, bool modColorPermutation);

/// Renames colors: edge color c becomes sigma[c - 1] (1-based values).
TilingSpec recolor(const TilingSpec& spec, const std::vector<unsigned>& sigma);

/// Lexicographic order on (tileCount, colorCount, edges).
bool specLess(const TilingSpec& a, const TilingSpec& b);

struct CatalogEntry {
  TilingSpec specA;
  TilingSpec specB;
  /// Colors of specB renamed by this permutation intertwine with specA.
  std::vector<unsigned> colorPermutation;
  TransplantationResult result;
  std::size_t groupOrder = 0;
  bool twoTransitive = false;
};

struct PairCatalog {
  std::vector<CatalogEntry> entries;
  /// Pair and color-permutation combinations sharing a word-trace signature.
  std::size_t pairsExamined = 0;
  std::size_t pairsClassified = 0;  // survived the word-fix comparison
};

/// Classifies all unordered pairs (including a spec against its own
/// recolorings when `modColorPermutation`) and keeps the transplantable,
/// noncongruent ones. Specs must share N and r.
PairCatalog buildPairCatalog(const std::vector<TilingSpec>& specs,
                             bool modColorPermutation = true,
                             const InvertibleSearchOptions& options = {});

struct GassmannSearch {
  std::vector<GassmannTriple> triples;
  std::size_t subgroupsFound = 0;
  bool complete = true;
};

/// Pairs of index-N subgroups that are almost conjugate but not conjugate,
/// one per pair of conjugacy classes. Subgroups are built by joining single
/// elements onto known subgroups until nothing new appears or the closure
/// budget is spent.
GassmannSearch gassmannPairsFromGroup(const PermutationGroup& g, std::size_t indexN,
                                      std::size_t closureBudget = 200'000);

}  // namespace drum
