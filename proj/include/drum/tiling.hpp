#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "drum/permgroup.hpp"
#include "drum/permutation.hpp"
#include "drum/rational.hpp"

namespace drum {

/// Tiles i and j glued along side `color` (1-based). Stored with i < j.
struct GluedEdge {
  unsigned color = 1;
  PointIndex i = 0;
  PointIndex j = 0;

  friend auto operator<=>(const GluedEdge&, const GluedEdge&) = default;
  friend bool operator==(const GluedEdge&, const GluedEdge&) = default;
};

/// N copies of an r-gon and the sides along which they are glued. Each color
/// class of edges is a partial matching once validated.
struct TilingSpec {
  std::size_t tileCount = 0;
  std::size_t colorCount = 0;
  std::vector<GluedEdge> edges;

  friend bool operator==(const TilingSpec&, const TilingSpec&) = default;
};

/// Checks the matching condition and returns the spec with every edge
/// stored as i < j and the list sorted by (color, i, j). Throws
/// Error(InvalidInput) naming the offending edge.
TilingSpec validate(const TilingSpec& spec);

/// Colors with no edges. Such a side is boundary on every tile; the spec is
/// still valid but can never satisfy the fixed-point equation as a tree.
std::vector<unsigned> unusedColors(const TilingSpec& spec);

/// θ^(μ) for μ = 1..r: swaps glued pairs, fixes tiles whose side μ is on the
/// boundary.
std::vector<Permutation> involutions(const TilingSpec& spec);

bool isConnected(const TilingSpec& spec);
bool isTree(const TilingSpec& spec);

/// <θ^(1), ..., θ^(r)>. Requires a connected spec.
PermutationGroup operatorGroup(const TilingSpec& spec,
                               std::size_t cap = kDefaultGroupCap);

/// Σ_μ Fix(θ^(μ)).
std::size_t fixedPointSum(const TilingSpec& spec);

/// (r − 2)·N + 2 = Σ_μ Fix(θ^(μ)), the condition for a tree-shaped
/// Schreier graph.
bool fixedPointEquationHolds(const TilingSpec& spec);

/// 2(N − 1)/(N − φ); the largest side count r a tree can reach when no
/// nonidentity element fixes more than φ of the N points. Requires N > φ.
Rational cBound(const mpz_class& modulePoints, const mpz_class& phi);

enum class TableFamily { None, UnitaryPSU3, Suzuki, Ree };

/// One line of the 2-transitive group table. Family rows (PSU_3(q), Sz(q),
/// R(q)) carry symbolic text and are evaluated at a concrete q.
struct GroupTableRow {
  int caseNumber = 0;
  std::string group;
  TableFamily family = TableFamily::None;
  std::string phiText;
  std::string pointsText;
  std::string cText;
  std::optional<unsigned> q;  // set for evaluated family rows
  mpz_class phi;
  mpz_class modulePoints;
  Rational c;
};

/// True iff q is a legal parameter for the family (prime power; 2^(2e+1),
/// e ≥ 1 for Suzuki; 3^(2e+1) for Ree).
bool familyAdmits(TableFamily family, unsigned q);
unsigned smallestFamilyParameter(TableFamily family);

/// The ten rows. Family rows are evaluated at `q` when the family admits it
/// and at the family's smallest parameter otherwise.
std::vector<GroupTableRow> groupTable(std::optional<unsigned> q = std::nullopt);

}  // namespace drum
