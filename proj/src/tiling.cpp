#include "drum/tiling.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "drum/error.hpp"

namespace drum {

namespace {

std::string describe(const GluedEdge& e) {
  return "(" + std::to_string(e.color) + "," + std::to_string(e.i) + "," +
         std::to_string(e.j) + ")";
}

}  // namespace

TilingSpec validate(const TilingSpec& spec) {
  if (spec.tileCount == 0) fail(ErrorKind::InvalidInput, "tile count must be positive");
  if (spec.colorCount < 3) fail(ErrorKind::InvalidInput, "color count must be at least 3");
  TilingSpec out{spec.tileCount, spec.colorCount, {}};
  std::vector<bool> used(spec.tileCount * spec.colorCount, false);
  for (GluedEdge e : spec.edges) {
    if (e.color < 1 || e.color > spec.colorCount) {
      fail(ErrorKind::InvalidInput, "edge " + describe(e) + ": color out of range");
    }
    if (e.i >= spec.tileCount || e.j >= spec.tileCount) {
      fail(ErrorKind::InvalidInput, "edge " + describe(e) + ": tile out of range");
    }
    if (e.i == e.j) fail(ErrorKind::InvalidInput, "edge " + describe(e) + ": self-loop");
    if (e.i > e.j) std::swap(e.i, e.j);
    for (PointIndex v : {e.i, e.j}) {
      auto slot = used[v * spec.colorCount + (e.color - 1)];
      if (slot) {
        fail(ErrorKind::InvalidInput,
             "edge " + describe(e) + ": tile " + std::to_string(v) +
                 " already has a color-" + std::to_string(e.color) + " edge");
      }
      slot = true;
    }
    out.edges.push_back(e);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::vector<unsigned> unusedColors(const TilingSpec& spec) {
  std::vector<bool> seen(spec.colorCount + 1, false);
  for (const auto& e : spec.edges) {
    if (e.color <= spec.colorCount) seen[e.color] = true;
  }
  std::vector<unsigned> out;
  for (unsigned c = 1; c <= spec.colorCount; ++c) {
    if (!seen[c]) out.push_back(c);
  }
  return out;
}

std::vector<Permutation> involutions(const TilingSpec& spec) {
  std::vector<std::vector<PointIndex>> images(
      spec.colorCount, std::vector<PointIndex>(spec.tileCount));
  for (auto& img : images) std::iota(img.begin(), img.end(), PointIndex{0});
  for (const auto& e : spec.edges) {
    images[e.color - 1][e.i] = e.j;
    images[e.color - 1][e.j] = e.i;
  }
  std::vector<Permutation> out;
  out.reserve(images.size());
  for (auto& img : images) out.emplace_back(std::move(img));
  return out;
}

bool isConnected(const TilingSpec& spec) {
  if (spec.tileCount == 0) return false;
  std::vector<PointIndex> parent(spec.tileCount);
  std::iota(parent.begin(), parent.end(), PointIndex{0});
  const auto find = [&](PointIndex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = spec.tileCount;
  for (const auto& e : spec.edges) {
    const auto a = find(e.i), b = find(e.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

bool isTree(const TilingSpec& spec) {
  return spec.edges.size() + 1 == spec.tileCount && isConnected(spec);
}

PermutationGroup operatorGroup(const TilingSpec& spec, std::size_t cap) {
  if (!isConnected(spec)) {
    fail(ErrorKind::InvalidInput, "operator group requires a connected tiling");
  }
  return closure(involutions(spec), cap);
}

std::size_t fixedPointSum(const TilingSpec& spec) {
  // Every edge of color μ moves exactly two tiles under θ^(μ).
  return spec.colorCount * spec.tileCount - 2 * spec.edges.size();
}

bool fixedPointEquationHolds(const TilingSpec& spec) {
  std::size_t sum = 0;
  for (const auto& theta : involutions(spec)) sum += theta.fixedPoints();
  return (spec.colorCount - 2) * spec.tileCount + 2 == sum;
}

Rational cBound(const mpz_class& modulePoints, const mpz_class& phi) {
  if (phi < 0 || modulePoints <= phi) {
    fail(ErrorKind::InvalidInput, "cBound requires N > phi >= 0");
  }
  Rational c(2 * (modulePoints - 1), modulePoints - phi);
  c.canonicalize();
  return c;
}

namespace {

bool isPowerOf(unsigned q, unsigned base, bool oddExponentOnly,
               unsigned minExponent) {
  unsigned e = 0;
  while (q > 1 && q % base == 0) {
    q /= base;
    ++e;
  }
  if (q != 1 || e < minExponent) return false;
  return !oddExponentOnly || e % 2 == 1;
}

bool isPrimePower(unsigned q) {
  if (q < 2) return false;
  unsigned p = 2;
  while (q % p != 0) ++p;
  return isPowerOf(q, p, false, 1);
}

}  // namespace

bool familyAdmits(TableFamily family, unsigned q) {
  switch (family) {
    case TableFamily::None:
      return false;
    case TableFamily::UnitaryPSU3:
      return isPrimePower(q);
    case TableFamily::Suzuki:
      return isPowerOf(q, 2, true, 3);  // 2^(2e+1), e >= 1
    case TableFamily::Ree:
      return isPowerOf(q, 3, true, 1);  // 3^(2e+1), e >= 0
  }
  return false;
}

unsigned smallestFamilyParameter(TableFamily family) {
  switch (family) {
    case TableFamily::UnitaryPSU3:
      return 2;
    case TableFamily::Suzuki:
      return 8;
    case TableFamily::Ree:
      return 3;
    case TableFamily::None:
      break;
  }
  return 0;
}

std::vector<GroupTableRow> groupTable(std::optional<unsigned> q) {
  struct Family {
    int caseNumber;
    const char* group;
    TableFamily family;
    int pointsExponent;  // N = q^e + 1
    const char* pointsText;
    const char* cText;
  };
  static constexpr Family kFamilies[] = {
      {1, "PSU_3(q)", TableFamily::UnitaryPSU3, 3, "q^3+1", "2q^3/(q^3-q)"},
      {2, "Sz(q)", TableFamily::Suzuki, 2, "q^2+1", "2q^2/(q^2-q)"},
      {3, "R(q)", TableFamily::Ree, 3, "q^3+1", "2q^3/(q^3-q)"},
  };
  struct Concrete {
    int caseNumber;
    const char* group;
    unsigned phi;
    unsigned points;
  };
  static constexpr Concrete kConcrete[] = {
      {4, "M_11", 3, 11},  {5, "M_11", 4, 12},   {6, "M_12", 4, 12},
      {7, "M_23", 7, 23},  {8, "M_24", 8, 24},   {9, "HS", 16, 176},
      {10, "CO_3", 36, 276},
  };

  std::vector<GroupTableRow> rows;
  for (const auto& f : kFamilies) {
    const unsigned param =
        q && familyAdmits(f.family, *q) ? *q : smallestFamilyParameter(f.family);
    GroupTableRow row;
    row.caseNumber = f.caseNumber;
    row.group = f.group;
    row.family = f.family;
    row.phiText = "q+1";
    row.pointsText = f.pointsText;
    row.cText = f.cText;
    row.q = param;
    mpz_class qq = param;
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), qq.get_mpz_t(), f.pointsExponent);
    row.phi = qq + 1;
    row.modulePoints = power + 1;
    row.c = cBound(row.modulePoints, row.phi);
    rows.push_back(std::move(row));
  }
  for (const auto& c : kConcrete) {
    GroupTableRow row;
    row.caseNumber = c.caseNumber;
    row.group = c.group;
    row.phi = c.phi;
    row.modulePoints = c.points;
    row.phiText = std::to_string(c.phi);
    row.pointsText = std::to_string(c.points);
    row.c = cBound(row.modulePoints, row.phi);
    row.cText = toString(row.c);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace drum
