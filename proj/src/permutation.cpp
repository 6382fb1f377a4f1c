#include "drum/permutation.hpp"

#include <numeric>
#include <sstream>

#include "drum/error.hpp"

namespace drum {

Permutation::Permutation(std::vector<PointIndex> images)
    : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (PointIndex v : images_) {
    if (v >= images_.size() || seen[v]) {
      fail(ErrorKind::InvalidInput, "image list is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<PointIndex> images(degree);
  std::iota(images.begin(), images.end(), PointIndex{0});
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::fromCycles(
    std::size_t degree, const std::vector<std::vector<PointIndex>>& cycles) {
  std::vector<PointIndex> images(degree);
  std::iota(images.begin(), images.end(), PointIndex{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const PointIndex from = cycle[k];
      if (from >= degree || used[from]) {
        fail(ErrorKind::InvalidInput, "cycles are not disjoint or out of range");
      }
      used[from] = true;
      images[from] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<PointIndex> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[images_[i]] = static_cast<PointIndex>(i);
  }
  return Permutation(std::move(inv), Unchecked{});
}

bool Permutation::isIdentity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

bool Permutation::isInvolution() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[images_[i]] != i) return false;
  }
  return true;
}

std::size_t Permutation::fixedPoints() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) count += images_[i] == i;
  return count;
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::string Permutation::cycleString() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    out << '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (j != i) out << ' ';
      out << j;
    }
    out << ')';
  }
  return any ? out.str() : "()";
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    fail(ErrorKind::InvalidInput, "compose: degree mismatch");
  }
  std::vector<PointIndex> out(p.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.images_[q.images_[i]];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

Permutation conjugate(const Permutation& g, const Permutation& x) {
  if (g.degree() != x.degree()) {
    fail(ErrorKind::InvalidInput, "conjugate: degree mismatch");
  }
  // (g x g^-1)(g(i)) = g(x(i))
  std::vector<PointIndex> out(g.degree());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[g.images_[i]] = g.images_[x.images_[i]];
  }
  return Permutation(std::move(out), Permutation::Unchecked{});
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image list
  std::size_t h = 1469598103934665603ull;
  for (PointIndex v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace drum
