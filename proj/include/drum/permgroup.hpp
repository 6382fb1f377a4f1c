#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drum/permutation.hpp"
#include "drum/rational.hpp"

namespace drum {

/// Materialization cap for element enumeration.
inline constexpr std::size_t kDefaultGroupCap = 1'000'000;

/// A finitely generated permutation group with its elements enumerated.
///
/// Copies are cheap: the element table is shared and immutable. Two copies of
/// the same closure compare as the same group via sameAs().
class PermutationGroup {
 public:
  /// An empty handle; every query on it throws "not materialized".
  PermutationGroup() = default;

  std::size_t degree() const;
  std::size_t order() const;
  const std::vector<Permutation>& generators() const;

  /// Elements in breadth-first insertion order; elements()[0] is the identity.
  std::span<const Permutation> elements() const;
  std::optional<std::size_t> indexOf(const Permutation& p) const;
  bool contains(const Permutation& p) const { return indexOf(p).has_value(); }

  bool materialized() const noexcept { return data_ != nullptr; }
  bool sameAs(const PermutationGroup& other) const noexcept {
    return data_ == other.data_;
  }

 private:
  struct Data {
    std::size_t degree = 0;
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  };
  const Data& data() const;

  std::shared_ptr<const Data> data_;

  friend PermutationGroup closure(std::vector<Permutation> generators,
                                  std::size_t cap);
};

/// Breadth-first closure from the identity, applying generators in list
/// order. Throws Error(CapExceeded) once more than `cap` elements appear.
PermutationGroup closure(std::vector<Permutation> generators,
                         std::size_t cap = kDefaultGroupCap);

/// A subgroup stored as a set of element indices of its parent.
class Subgroup {
 public:
  Subgroup(PermutationGroup parent, std::vector<std::size_t> elementIndices);

  const PermutationGroup& parent() const noexcept { return parent_; }
  std::size_t order() const noexcept { return indices_.size(); }
  /// Sorted parent indices.
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  bool containsIndex(std::size_t parentIndex) const {
    return member_[parentIndex];
  }
  bool contains(const Permutation& p) const;
  std::vector<Permutation> elements() const;

 private:
  PermutationGroup parent_;
  std::vector<std::size_t> indices_;
  std::vector<bool> member_;
};

/// Closure of `generators` inside `parent`; throws if a generator is not in
/// the parent.
Subgroup subgroupGeneratedBy(const PermutationGroup& parent,
                             const std::vector<Permutation>& generators);

struct ConjugacyClass {
  Permutation representative;
  std::size_t size = 0;
};

struct ConjugacyClassTable {
  std::vector<ConjugacyClass> classes;
  /// classOf[i] = class id of parent element i.
  std::vector<std::size_t> classOf;
};

ConjugacyClassTable conjugacyClasses(const PermutationGroup& g);

std::size_t maxNonidentityFixedPoints(const PermutationGroup& g);

/// Orbit of x under the generators, in discovery order.
std::vector<PointIndex> orbit(const PermutationGroup& g, PointIndex x);
bool isTransitive(const PermutationGroup& g);
bool isTwoTransitive(const PermutationGroup& g);

Subgroup pointStabilizer(const PermutationGroup& g, PointIndex x);
/// Setwise stabilizer of `points`.
Subgroup setStabilizer(const PermutationGroup& g,
                       const std::vector<PointIndex>& points);

/// Some c in g with c·h1·c⁻¹ = h2, found by exhaustive conjugation.
std::optional<Permutation> conjugatingElement(const PermutationGroup& g,
                                              const Subgroup& h1,
                                              const Subgroup& h2);

struct GassmannTriple {
  PermutationGroup group;
  Subgroup h1;
  Subgroup h2;
  /// Per conjugacy class of `group`: (|h1 ∩ C|, |h2 ∩ C|).
  std::vector<std::pair<std::size_t, std::size_t>> classCounts;
  bool almostConjugate = false;
  bool conjugate = false;
  std::optional<Permutation> conjugator;

  /// Almost conjugate but not conjugate.
  bool isGassmannPair() const noexcept { return almostConjugate && !conjugate; }
};

GassmannTriple almostConjugate(const PermutationGroup& g, const Subgroup& h1,
                               const Subgroup& h2);

/// Compares the permutation characters of two actions of `g`, given as the
/// images of g's generators. Throws Error(InvalidInput) if either list does
/// not extend to a homomorphism from g.
bool permutationCharacterEqual(const PermutationGroup& g,
                               const std::vector<Permutation>& action1,
                               const std::vector<Permutation>& action2);

/// Closes the diagonal group <(a_i, b_i)> and reports whether every element
/// fixes equally many points in both coordinates. This is exactly the
/// condition for the two linear permutation representations of the free
/// product of the generators to be equivalent.
bool diagonalCharacterEqual(const std::vector<Permutation>& a,
                            const std::vector<Permutation>& b,
                            std::size_t cap = kDefaultGroupCap);

/// (1/|G|) Σ_g Fix(g)^k. Equals the number of orbits on k-tuples.
Rational meanFixedPointPower(const PermutationGroup& g, unsigned k);

}  // namespace drum
