#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace drum {

/// Points of a permutation domain are 0-indexed.
using PointIndex = std::uint32_t;

/// A bijection on {0..N-1} stored in one-line image notation.
class Permutation {
 public:
  Permutation() = default;

  /// Throws Error(InvalidInput) unless `images` is a bijection.
  explicit Permutation(std::vector<PointIndex> images);
  Permutation(std::initializer_list<PointIndex> images)
      : Permutation(std::vector<PointIndex>(images)) {}

  static Permutation identity(std::size_t degree);

  /// Builds a permutation from disjoint cycles, e.g. {{0, 1}, {2, 3, 4}}.
  static Permutation fromCycles(
      std::size_t degree, const std::vector<std::vector<PointIndex>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  PointIndex operator()(PointIndex x) const { return images_[x]; }
  std::span<const PointIndex> images() const noexcept { return images_; }

  Permutation inverse() const;
  bool isIdentity() const noexcept;
  bool isInvolution() const noexcept;  // p∘p = id (identity included)
  std::size_t fixedPoints() const noexcept;
  std::size_t order() const;

  /// Cycle notation with singletons omitted, "()" for the identity.
  std::string cycleString() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  struct Unchecked {};
  Permutation(std::vector<PointIndex> images, Unchecked) noexcept
      : images_(std::move(images)) {}

  std::vector<PointIndex> images_;

  friend Permutation compose(const Permutation& p, const Permutation& q);
  friend Permutation conjugate(const Permutation& g, const Permutation& x);
};

/// (p∘q)(i) = p(q(i)): q is applied first.
Permutation compose(const Permutation& p, const Permutation& q);

/// g x g^-1.
Permutation conjugate(const Permutation& g, const Permutation& x);

inline std::size_t fixedPoints(const Permutation& p) { return p.fixedPoints(); }

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace drum
