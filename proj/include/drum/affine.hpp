#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "drum/permutation.hpp"

namespace drum {

/// Finite field GF(q), q = p^k, elements encoded as 0..q-1 (base-p digits of
/// the polynomial coefficients). Table driven; meant for small q.
class GaloisField {
 public:
  /// Throws Error(InvalidInput) unless q is a prime power ≤ 256.
  explicit GaloisField(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned extensionDegree() const noexcept { return k_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  /// x ↦ x^(p^power).
  unsigned frobenius(unsigned x, unsigned power) const;

 private:
  unsigned q_, p_, k_;
  std::vector<unsigned> add_, mul_;
};

/// Points of AG(n, q) are coordinate vectors ordered lexicographically;
/// point index = Σ x_i q^(n-1-i).
std::vector<std::vector<unsigned>> affinePoints(unsigned q, unsigned n);

/// Visits every bijective map x ↦ A·x^σ + c of AG(n, q) as a permutation of
/// the lexicographic point list. σ ranges over the field automorphisms when
/// `semilinear` is set, otherwise σ = id (plain AGL(n, q)).
void forEachAffineMap(unsigned q, unsigned n, bool semilinear,
                      const std::function<void(const Permutation&)>& visit);

/// All nonidentity involutions among the maps of forEachAffineMap.
std::vector<Permutation> affineInvolutions(unsigned q, unsigned n,
                                           bool semilinear = true);

/// True iff every involution fixes at most q^(n-1) points. Throws
/// Error(InvalidInput) for a non-involution, the identity, or a permutation
/// whose degree is not q^n.
bool affineInvolutionBoundHolds(unsigned q, unsigned n,
                                std::span<const Permutation> involutions);

}  // namespace drum
