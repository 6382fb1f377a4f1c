#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "drum/permutation.hpp"
#include "drum/rational.hpp"
#include "drum/tiling.hpp"

namespace drum {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  /// P with P e_i = e_{p(i)}.
  static RationalMatrix fromPermutation(const Permutation& p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  bool isZero() const;
  /// The permutation p with this == fromPermutation(p), if any.
  std::optional<Permutation> asPermutation() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& m);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> entries_;
};

Rational determinant(const RationalMatrix& m);
bool isInvertible(const RationalMatrix& m);
std::string formatMatrix(const RationalMatrix& m);

/// T·M^(μ) = N^(μ)·T for every side μ, where M, N are the gluing matrices of
/// `a` and `b`.
bool intertwines(const RationalMatrix& t, const TilingSpec& a, const TilingSpec& b);

/// Basis of {T : T·M^(μ) = N^(μ)·T ∀μ}, one vector per free unknown of the
/// reduced echelon form (unknowns T_ij ordered row-major).
std::vector<RationalMatrix> intertwinerSpace(const TilingSpec& a,
                                             const TilingSpec& b);

enum class Certainty {
  Found,           // witness returned
  ProvedNone,      // determinant polynomial vanishes identically
  NoneFound,       // randomized trials failed; nonexistence not proved
};

struct IntertwinerSearch {
  std::optional<RationalMatrix> witness;
  std::vector<long long> coefficients;  // combination producing the witness
  Certainty certainty = Certainty::NoneFound;
};

struct InvertibleSearchOptions {
  /// Total combinations tried by the escalating integer sweep.
  std::size_t sweepBudget = 20000;
  /// Exact certification of nonexistence for basis dimension up to this.
  std::size_t exactCertificationMaxDim = 4;
  std::size_t randomTrials = 32;
  /// classify() first compares the two permutation characters on the
  /// diagonal group when it has at most this many elements; a mismatch
  /// proves that no invertible intertwiner exists.
  std::size_t characterClosureCap = 200'000;
};

/// Looks for an invertible combination of `basis`. Coefficient vectors are
/// swept with max-norm B = 1, 2, 4, ..., 64 in a fixed order; then
/// nonexistence is certified exactly (small dimension) or probed with random
/// coefficients.
IntertwinerSearch findInvertibleIntertwiner(
    const std::vector<RationalMatrix>& basis,
    const InvertibleSearchOptions& options = {});

/// A color-preserving isomorphism π from the gluing graph of `a` onto that of
/// `b`, i.e. π·θ_a^(μ)·π⁻¹ = θ_b^(μ) for all μ.
std::optional<Permutation> existsPermutationIntertwiner(const TilingSpec& a,
                                                        const TilingSpec& b);

enum class Verdict { Congruent, TransplantableNoncongruent, NotTransplantable };
std::string verdictName(Verdict v);

struct TransplantationResult {
  Verdict verdict = Verdict::NotTransplantable;
  std::optional<RationalMatrix> witness;
  std::size_t intertwinerDimension = 0;
  /// ProvedNone/NoneFound qualify a NotTransplantable verdict.
  Certainty certainty = Certainty::Found;
};

TransplantationResult classify(const TilingSpec& a, const TilingSpec& b,
                               const InvertibleSearchOptions& options = {});

/// θ_a^(μ) ↦ θ_b^(μ) extends to a group isomorphism (the diagonal group is
/// no larger than either operator group).
bool generatorMapIsIsomorphism(const TilingSpec& a, const TilingSpec& b,
                               std::size_t cap = kDefaultGroupCap);

}  // namespace drum
