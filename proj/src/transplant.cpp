#include "drum/transplant.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>

#include "drum/error.hpp"
#include "drum/permgroup.hpp"

namespace drum {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::fromPermutation(const Permutation& p) {
  RationalMatrix m(p.degree(), p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) m(p(static_cast<PointIndex>(i)), i) = 1;
  return m;
}

bool RationalMatrix::isZero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& x) { return x == 0; });
}

std::optional<Permutation> RationalMatrix::asPermutation() const {
  if (rows_ != cols_) return std::nullopt;
  std::vector<PointIndex> images(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t ones = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& x = (*this)(r, c);
      if (x == 1) {
        ++ones;
        images[c] = static_cast<PointIndex>(r);
      } else if (x != 0) {
        return std::nullopt;
      }
    }
    if (ones != 1) return std::nullopt;
  }
  try {
    return Permutation(std::move(images));
  } catch (const Error&) {
    return std::nullopt;
  }
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::InvalidInput, "matrix shape mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    fail(ErrorKind::InvalidInput, "matrix shape mismatch");
  }
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& m) {
  RationalMatrix out = m;
  for (auto& x : out.entries_) x *= s;
  return out;
}

namespace {

// Bareiss fraction-free elimination on an integer matrix.
mpz_class integerDeterminant(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<mpz_class>> ints(n, std::vector<mpz_class>(n));
  mpz_class scaleProduct = 1;
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class scale = 1;
    for (std::size_t c = 0; c < n; ++c) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < n; ++c) {
      ints[r][c] = m(r, c).get_num() * (scale / m(r, c).get_den());
    }
    scaleProduct *= scale;
  }
  Rational det(integerDeterminant(std::move(ints)), scaleProduct);
  det.canonicalize();
  return det;
}

bool isInvertible(const RationalMatrix& m) {
  return m.rows() == m.cols() && determinant(m) != 0;
}

std::string formatMatrix(const RationalMatrix& m) {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cells.push_back(toString(m(r, c)));
      width = std::max(width, cells.back().size());
    }
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& s = cells[r * m.cols() + c];
      out << (c ? " " : "") << std::string(width - s.size(), ' ') << s;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void requireComparable(const TilingSpec& a, const TilingSpec& b) {
  if (a.tileCount != b.tileCount || a.colorCount != b.colorCount) {
    fail(ErrorKind::InvalidInput,
         "tilings differ in tile count or color count");
  }
}

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;  // sorted

SparseRow subtractMultiple(const SparseRow& a, const Rational& factor,
                           const SparseRow& b) {
  SparseRow out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -factor * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - factor * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Null space of a homogeneous sparse system by exact elimination. The
/// basis has one vector per free unknown (ascending), matching the reduced
/// echelon form.
std::vector<std::vector<Rational>> nullspace(const std::vector<SparseRow>& rows,
                                             std::size_t unknowns) {
  std::map<std::size_t, SparseRow> pivots;  // pivot column -> row, pivot = 1
  for (SparseRow row : rows) {
    while (!row.empty()) {
      const auto [col, lead] = row.front();
      auto it = pivots.find(col);
      if (it == pivots.end()) {
        const Rational inv = 1 / lead;
        for (auto& [c, v] : row) v *= inv;
        pivots.emplace(col, std::move(row));
        break;
      }
      row = subtractMultiple(row, lead, it->second);
    }
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (pivots.contains(free)) continue;
    std::vector<Rational> x(unknowns);
    x[free] = 1;
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      Rational acc = 0;
      for (const auto& [c, v] : it->second) {
        if (c != it->first) acc -= v * x[c];
      }
      x[it->first] = acc;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace

bool intertwines(const RationalMatrix& t, const TilingSpec& a,
                 const TilingSpec& b) {
  requireComparable(a, b);
  const auto ta = involutions(a);
  const auto tb = involutions(b);
  for (std::size_t mu = 0; mu < ta.size(); ++mu) {
    const auto m = RationalMatrix::fromPermutation(ta[mu]);
    const auto n = RationalMatrix::fromPermutation(tb[mu]);
    if (t * m != n * t) return false;
  }
  return true;
}

std::vector<RationalMatrix> intertwinerSpace(const TilingSpec& a,
                                             const TilingSpec& b) {
  requireComparable(a, b);
  const std::size_t n = a.tileCount;
  const auto ta = involutions(a);
  const auto tb = involutions(b);
  // (T M)_ij = T_{i, θa(j)} and (N T)_ij = T_{θb(i), j}.
  std::vector<SparseRow> rows;
  for (std::size_t mu = 0; mu < ta.size(); ++mu) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t lhs = i * n + ta[mu](static_cast<PointIndex>(j));
        const std::size_t rhs = tb[mu](static_cast<PointIndex>(i)) * n + j;
        if (lhs == rhs) continue;
        SparseRow row{{std::min(lhs, rhs), Rational(1)},
                      {std::max(lhs, rhs), Rational(-1)}};
        rows.push_back(std::move(row));
      }
    }
  }
  std::vector<RationalMatrix> basis;
  for (auto& x : nullspace(rows, n * n)) {
    RationalMatrix t(n, n);
    for (std::size_t k = 0; k < n * n; ++k) t(k / n, k % n) = std::move(x[k]);
    basis.push_back(std::move(t));
  }
  return basis;
}

namespace {

RationalMatrix combine(const std::vector<RationalMatrix>& basis,
                       const std::vector<long long>& coeff) {
  RationalMatrix out(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeff[k] != 0) out = out + Rational(static_cast<long>(coeff[k])) * basis[k];
  }
  return out;
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > (std::size_t{1} << 40) / std::max<std::size_t>(base, 1)) return std::size_t{1} << 40;
    r *= base;
  }
  return r;
}

// Reduction of a rational basis modulo the prime 2^61 - 1. A nonzero
// determinant modulo p proves the rational determinant nonzero.
class ModularBasis {
 public:
  explicit ModularBasis(const std::vector<RationalMatrix>& basis)
      : n_(basis.front().rows()) {
    for (const auto& m : basis) {
      std::vector<std::uint64_t> reduced(n_ * n_);
      for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t c = 0; c < n_; ++c) {
          const auto& x = m(r, c);
          const std::uint64_t den = reduce(x.get_den());
          if (den == 0) {
            usable_ = false;
            return;
          }
          reduced[r * n_ + c] = mul(reduce(x.get_num()), inverse(den));
        }
      }
      mats_.push_back(std::move(reduced));
    }
  }

  bool usable() const noexcept { return usable_; }

  bool certifiesInvertible(const std::vector<long long>& coeff) const {
    std::vector<std::uint64_t> a(n_ * n_, 0);
    for (std::size_t k = 0; k < mats_.size(); ++k) {
      if (coeff[k] == 0) continue;
      const std::uint64_t ck = fromSigned(coeff[k]);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = add(a[i], mul(ck, mats_[k][i]));
    }
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t pivot = col;
      while (pivot < n_ && a[pivot * n_ + col] == 0) ++pivot;
      if (pivot == n_) return false;
      if (pivot != col) {
        for (std::size_t c = 0; c < n_; ++c) std::swap(a[pivot * n_ + c], a[col * n_ + c]);
      }
      const std::uint64_t inv = inverse(a[col * n_ + col]);
      for (std::size_t r = col + 1; r < n_; ++r) {
        const std::uint64_t f = mul(a[r * n_ + col], inv);
        if (f == 0) continue;
        for (std::size_t c = col; c < n_; ++c) {
          a[r * n_ + c] = add(a[r * n_ + c], kPrime - mul(f, a[col * n_ + c]));
        }
      }
    }
    return true;
  }

 private:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
  }
  static std::uint64_t inverse(std::uint64_t a) {
    std::uint64_t result = 1, e = kPrime - 2;
    for (; e > 0; e >>= 1, a = mul(a, a)) {
      if (e & 1) result = mul(result, a);
    }
    return result;
  }
  static std::uint64_t fromSigned(long long v) {
    const auto mag = static_cast<std::uint64_t>(v < 0 ? -v : v) % kPrime;
    return v < 0 && mag != 0 ? kPrime - mag : mag;
  }
  static std::uint64_t reduce(const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), kPrime);
    return r.get_ui();
  }

  std::size_t n_;
  bool usable_ = true;
  std::vector<std::vector<std::uint64_t>> mats_;
};

bool advanceOdometer(std::vector<std::size_t>& digit, std::size_t base) {
  for (std::size_t k = digit.size(); k-- > 0;) {
    if (++digit[k] < base) return true;
    digit[k] = 0;
  }
  return false;
}

}  // namespace

IntertwinerSearch findInvertibleIntertwiner(
    const std::vector<RationalMatrix>& basis,
    const InvertibleSearchOptions& options) {
  IntertwinerSearch result;
  if (basis.empty()) {
    result.certainty = Certainty::ProvedNone;
    return result;
  }
  const std::size_t dim = basis.size();
  const ModularBasis modular(basis);
  // Without `exact`, a candidate whose determinant vanishes modulo p is
  // skipped even if its rational determinant does not.
  const auto tryCoefficients = [&](const std::vector<long long>& c, bool exact) {
    const bool certified = modular.usable() && modular.certifiesInvertible(c);
    if (!certified && (modular.usable() && !exact)) return false;
    auto t = combine(basis, c);
    if (!certified && !isInvertible(t)) return false;
    result.witness = std::move(t);
    result.coefficients = c;
    result.certainty = Certainty::Found;
    return true;
  };

  // Escalating sweep. Values per coordinate are ordered 0, 1, -1, 2, -2, ...
  std::size_t tried = 0;
  long long previous = 0;
  for (long long bound = 1; bound <= 64; bound *= 2) {
    const std::size_t stageSize =
        ipow(2 * bound + 1, dim) - ipow(2 * previous + 1, dim);
    if (tried > 0 && tried + stageSize > options.sweepBudget) break;
    std::vector<long long> values{0};
    for (long long v = 1; v <= bound; ++v) {
      values.push_back(v);
      values.push_back(-v);
    }
    std::vector<std::size_t> digit(dim, 0);
    std::vector<long long> c(dim, 0);
    while (true) {
      long long norm = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        c[k] = values[digit[k]];
        norm = std::max(norm, c[k] < 0 ? -c[k] : c[k]);
      }
      if (norm > previous) {
        if (tryCoefficients(c, false)) return result;
        if (++tried >= options.sweepBudget) break;
      }
      if (!advanceOdometer(digit, values.size())) break;
    }
    if (tried >= options.sweepBudget) break;
    previous = bound;
  }

  const std::size_t n = basis.front().rows();
  if (dim <= options.exactCertificationMaxDim) {
    // det(Σ c_k B_k) has degree ≤ n in each c_k, so it vanishes identically
    // iff it vanishes on the grid {0..n}^dim.
    std::vector<long long> c(dim, 0);
    while (true) {
      if (tryCoefficients(c, true)) return result;
      std::size_t k = 0;
      while (k < dim && ++c[k] > static_cast<long long>(n)) c[k++] = 0;
      if (k == dim) break;
    }
    result.certainty = Certainty::ProvedNone;
    return result;
  }

  // Schwartz–Zippel: a nonzero polynomial of degree n vanishes at a uniform
  // point of S^dim with probability ≤ n/|S|.
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_int_distribution<long long> dist(-1'000'000'000LL, 1'000'000'000LL);
  for (std::size_t trial = 0; trial < options.randomTrials; ++trial) {
    std::vector<long long> c(dim);
    for (auto& x : c) x = dist(rng);
    if (tryCoefficients(c, true)) return result;
  }
  result.certainty = Certainty::NoneFound;
  return result;
}

std::optional<Permutation> existsPermutationIntertwiner(const TilingSpec& a,
                                                        const TilingSpec& b) {
  requireComparable(a, b);
  const std::size_t n = a.tileCount;
  const auto ta = involutions(a);
  const auto tb = involutions(b);
  if (a.edges.size() != b.edges.size()) return std::nullopt;

  const auto signature = [](const std::vector<Permutation>& thetas, PointIndex v) {
    std::uint64_t mask = 0;
    for (std::size_t mu = 0; mu < thetas.size(); ++mu) {
      if (thetas[mu](v) != v) mask |= std::uint64_t{1} << (mu % 64);
    }
    return mask;
  };
  std::vector<std::uint64_t> sigA(n), sigB(n);
  for (PointIndex v = 0; v < n; ++v) {
    sigA[v] = signature(ta, v);
    sigB[v] = signature(tb, v);
  }

  constexpr PointIndex kFree = static_cast<PointIndex>(-1);
  std::vector<PointIndex> forward(n, kFree), backward(n, kFree);

  // Assigns v ↦ w and everything it forces along colored edges. Records
  // assignments in `trail`; returns false on conflict.
  const auto assign = [&](PointIndex v, PointIndex w,
                          std::vector<PointIndex>& trail) {
    std::vector<std::pair<PointIndex, PointIndex>> pending{{v, w}};
    while (!pending.empty()) {
      const auto [x, y] = pending.back();
      pending.pop_back();
      if (forward[x] != kFree || backward[y] != kFree) {
        if (forward[x] == y) continue;
        return false;
      }
      if (sigA[x] != sigB[y]) return false;
      forward[x] = y;
      backward[y] = x;
      trail.push_back(x);
      for (std::size_t mu = 0; mu < ta.size(); ++mu) {
        pending.emplace_back(ta[mu](x), tb[mu](y));
      }
    }
    return true;
  };
  const auto undo = [&](std::vector<PointIndex>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      backward[forward[trail.back()]] = kFree;
      forward[trail.back()] = kFree;
      trail.pop_back();
    }
  };

  std::vector<PointIndex> trail;
  // Depth-first over the lowest unassigned vertex.
  const auto search = [&](auto&& self) -> bool {
    PointIndex v = 0;
    while (v < n && forward[v] != kFree) ++v;
    if (v == n) return true;
    for (PointIndex w = 0; w < n; ++w) {
      if (backward[w] != kFree || sigA[v] != sigB[w]) continue;
      const std::size_t mark = trail.size();
      if (assign(v, w, trail) && self(self)) return true;
      undo(trail, mark);
    }
    return false;
  };
  if (!search(search)) return std::nullopt;
  return Permutation(forward);
}

std::string verdictName(Verdict v) {
  switch (v) {
    case Verdict::Congruent:
      return "Congruent";
    case Verdict::TransplantableNoncongruent:
      return "TransplantableNoncongruent";
    case Verdict::NotTransplantable:
      return "NotTransplantable";
  }
  return "?";
}

namespace {

// False only when the characters provably differ.
bool charactersMayAgree(const TilingSpec& a, const TilingSpec& b, std::size_t cap) {
  try {
    return diagonalCharacterEqual(involutions(a), involutions(b), cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    return true;
  }
}

}  // namespace

TransplantationResult classify(const TilingSpec& a, const TilingSpec& b,
                               const InvertibleSearchOptions& options) {
  requireComparable(a, b);
  TransplantationResult result;
  const auto basis = intertwinerSpace(a, b);
  result.intertwinerDimension = basis.size();
  if (auto pi = existsPermutationIntertwiner(a, b)) {
    result.verdict = Verdict::Congruent;
    result.witness = RationalMatrix::fromPermutation(*pi);
    result.certainty = Certainty::Found;
  } else if (!charactersMayAgree(a, b, options.characterClosureCap)) {
    result.verdict = Verdict::NotTransplantable;
    result.certainty = Certainty::ProvedNone;
  } else {
    auto search = findInvertibleIntertwiner(basis, options);
    result.certainty = search.certainty;
    if (search.witness) {
      result.verdict = Verdict::TransplantableNoncongruent;
      result.witness = std::move(search.witness);
    } else {
      result.verdict = Verdict::NotTransplantable;
    }
  }
  if (result.witness && !intertwines(*result.witness, a, b)) {
    fail(ErrorKind::InvalidInput, "internal error: witness does not intertwine");
  }
  return result;
}

bool generatorMapIsIsomorphism(const TilingSpec& a, const TilingSpec& b,
                               std::size_t cap) {
  requireComparable(a, b);
  const auto ta = involutions(a);
  const auto tb = involutions(b);
  const auto ga = closure(ta, cap);
  const auto gb = closure(tb, cap);
  if (ga.order() != gb.order()) return false;
  std::vector<Permutation> diagonal;
  for (std::size_t mu = 0; mu < ta.size(); ++mu) {
    std::vector<PointIndex> images(ta[mu].images().begin(), ta[mu].images().end());
    for (PointIndex v : tb[mu].images()) images.push_back(v + static_cast<PointIndex>(a.tileCount));
    diagonal.emplace_back(std::move(images));
  }
  return closure(std::move(diagonal), cap).order() == ga.order();
}

}  // namespace drum
