#include "drum/affine.hpp"

#include <set>
#include <string>

#include "drum/error.hpp"

namespace drum {

namespace {

using Poly = std::vector<unsigned>;  // coefficients over F_p, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly polyMod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  // m is monic
  while (a.size() >= m.size()) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = (a[shift + i] + p * p - lead * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly digits(unsigned x, unsigned p, unsigned k) {
  Poly out(k);
  for (unsigned i = 0; i < k; ++i) {
    out[i] = x % p;
    x /= p;
  }
  return out;
}

unsigned encode(const Poly& a, unsigned p) {
  unsigned x = 0;
  for (std::size_t i = a.size(); i-- > 0;) x = x * p + a[i];
  return x;
}

bool isIrreducible(const Poly& m, unsigned p) {
  const unsigned k = static_cast<unsigned>(m.size() - 1);
  // Try every monic divisor of degree 1..k/2.
  for (unsigned d = 1; 2 * d <= k; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned c = 0; c < count; ++c) {
      Poly f = digits(c, p, d);
      f.push_back(1);
      if (polyMod(m, f, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

GaloisField::GaloisField(unsigned q) : q_(q), p_(0), k_(0) {
  if (q < 2 || q > 256) {
    fail(ErrorKind::InvalidInput, "field order out of range: " + std::to_string(q));
  }
  for (unsigned d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p_ = d;
      break;
    }
  }
  unsigned rest = q;
  while (rest % p_ == 0) {
    rest /= p_;
    ++k_;
  }
  if (rest != 1) {
    fail(ErrorKind::InvalidInput, std::to_string(q) + " is not a prime power");
  }
  Poly modulus;
  for (unsigned c = 0; c < q; ++c) {
    Poly m = digits(c, p_, k_);
    m.push_back(1);
    if (isIrreducible(m, p_)) {
      modulus = std::move(m);
      break;
    }
  }
  add_.resize(q * q);
  mul_.resize(q * q);
  for (unsigned a = 0; a < q; ++a) {
    const Poly pa = digits(a, p_, k_);
    for (unsigned b = 0; b < q; ++b) {
      const Poly pb = digits(b, p_, k_);
      Poly sum(k_);
      for (unsigned i = 0; i < k_; ++i) sum[i] = (pa[i] + pb[i]) % p_;
      add_[a * q + b] = encode(sum, p_);
      Poly prod(2 * k_, 0);
      for (unsigned i = 0; i < k_; ++i) {
        for (unsigned j = 0; j < k_; ++j) {
          prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
        }
      }
      mul_[a * q + b] = encode(polyMod(prod, modulus, p_), p_);
    }
  }
}

unsigned GaloisField::frobenius(unsigned x, unsigned power) const {
  for (unsigned i = 0; i < power; ++i) {
    unsigned y = 1;
    for (unsigned j = 0; j < p_; ++j) y = mul(y, x);
    x = y;
  }
  return x;
}

std::vector<std::vector<unsigned>> affinePoints(unsigned q, unsigned n) {
  std::size_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= q;
  std::vector<std::vector<unsigned>> points(total, std::vector<unsigned>(n));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (unsigned i = n; i-- > 0;) {
      points[idx][i] = static_cast<unsigned>(rest % q);
      rest /= q;
    }
  }
  return points;
}

void forEachAffineMap(unsigned q, unsigned n, bool semilinear,
                      const std::function<void(const Permutation&)>& visit) {
  if (n == 0) fail(ErrorKind::InvalidInput, "affine dimension must be positive");
  const GaloisField field(q);
  const auto points = affinePoints(q, n);
  const std::size_t total = points.size();
  const auto indexOf = [&](const std::vector<unsigned>& v) {
    std::size_t idx = 0;
    for (unsigned x : v) idx = idx * q + x;
    return idx;
  };
  const unsigned autCount = semilinear ? field.extensionDegree() : 1;

  std::size_t matrixCount = 1;
  for (unsigned i = 0; i < n * n; ++i) matrixCount *= q;

  std::vector<unsigned> matrix(n * n);
  std::vector<PointIndex> linear(total);
  std::vector<PointIndex> images(total);
  std::vector<bool> hit(total);
  std::vector<unsigned> y(n);
  for (std::size_t code = 0; code < matrixCount; ++code) {
    std::size_t rest = code;
    for (unsigned i = n * n; i-- > 0;) {
      matrix[i] = static_cast<unsigned>(rest % q);
      rest /= q;
    }
    for (unsigned sigma = 0; sigma < autCount; ++sigma) {
      std::fill(hit.begin(), hit.end(), false);
      bool bijective = true;
      for (std::size_t idx = 0; idx < total && bijective; ++idx) {
        for (unsigned r = 0; r < n; ++r) {
          unsigned acc = 0;
          for (unsigned c = 0; c < n; ++c) {
            acc = field.add(acc, field.mul(matrix[r * n + c],
                                           field.frobenius(points[idx][c], sigma)));
          }
          y[r] = acc;
        }
        const std::size_t target = indexOf(y);
        if (hit[target]) bijective = false;
        hit[target] = true;
        linear[idx] = static_cast<PointIndex>(target);
      }
      if (!bijective) continue;
      for (std::size_t t = 0; t < total; ++t) {
        for (std::size_t idx = 0; idx < total; ++idx) {
          const auto& v = points[linear[idx]];
          for (unsigned r = 0; r < n; ++r) y[r] = field.add(v[r], points[t][r]);
          images[idx] = static_cast<PointIndex>(indexOf(y));
        }
        visit(Permutation(images));
      }
    }
  }
}

std::vector<Permutation> affineInvolutions(unsigned q, unsigned n,
                                           bool semilinear) {
  std::set<Permutation> found;
  forEachAffineMap(q, n, semilinear, [&](const Permutation& p) {
    if (p.isInvolution() && !p.isIdentity()) found.insert(p);
  });
  return {found.begin(), found.end()};
}

bool affineInvolutionBoundHolds(unsigned q, unsigned n,
                                std::span<const Permutation> involutions) {
  std::size_t points = 1, bound = 1;
  for (unsigned i = 0; i < n; ++i) points *= q;
  for (unsigned i = 0; i + 1 < n; ++i) bound *= q;
  bool holds = true;
  for (const auto& p : involutions) {
    if (p.degree() != points) {
      fail(ErrorKind::InvalidInput, "permutation degree is not q^n");
    }
    if (!p.isInvolution() || p.isIdentity()) {
      fail(ErrorKind::InvalidInput, "input is not a nonidentity involution");
    }
    holds = holds && p.fixedPoints() <= bound;
  }
  return holds;
}

}  // namespace drum
