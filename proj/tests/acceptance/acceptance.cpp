// ============================================================================
// acceptance.cpp
// End-to-end acceptance run: one PASS/FAIL line per criterion.
//
// Tolerances and runtime limits are pinned below. Each check recomputes its
// evidence from the library and, where possible, from an independent
// brute-force oracle in this file.
//
// RUN: ./acceptance        exit 0 iff every criterion passes
// ============================================================================

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drum/affine.hpp"
#include "drum/cli.hpp"
#include "drum/permgroup.hpp"
#include "drum/search.hpp"
#include "drum/spectral.hpp"
#include "drum/tiling.hpp"
#include "drum/transplant.hpp"
#include "drum/unfold.hpp"
#include "fixtures.hpp"
#include "random_specs.hpp"

using namespace drum;

namespace {

// ----------------------------------------------------------------------------
// Pinned thresholds
// ----------------------------------------------------------------------------

constexpr double kSquareOracleTol = 1e-8;
constexpr double kMinObservedOrder = 1.9;
constexpr double kPairRelTol = 1e-2;
constexpr double kControlMinGap = 5e-2;
constexpr std::size_t kRandomSpecs = 10'000;
constexpr std::size_t kRandomMaxTiles = 13;
constexpr std::size_t kRandomMaxColors = 6;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

struct Criterion {
  int id;
  const char* name;
  double limitSeconds;
  std::function<Outcome()> check;
};

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string str(const Rational& r) { return r.get_str(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// ----------------------------------------------------------------------------
// 1. Table reproduction
// ----------------------------------------------------------------------------

Outcome tableReproduction() {
  // Family rows are evaluated at their smallest admissible parameter.
  const std::vector<Rational> expected{frac(8, 3),  frac(16, 7), frac(9, 4),   frac(5, 2),
                                       frac(11, 4), frac(11, 4), frac(11, 4),  frac(23, 8),
                                       frac(35, 16), frac(55, 24)};
  const auto rows = groupTable();
  Outcome out;
  out.pass = rows.size() == expected.size();
  std::size_t matched = 0;
  for (std::size_t i = 0; i < rows.size() && i < expected.size(); ++i) {
    const auto& row = rows[i];
    const Rational recomputed = cBound(row.modulePoints, row.phi);
    const bool ok = row.c == expected[i] && recomputed == expected[i] && row.c < 3;
    if (ok) ++matched;
    else out.notes.push_back("row " + std::to_string(i + 1) + ": c = " + str(row.c) + ", expected " +
                             str(expected[i]));
    out.pass = out.pass && ok;
  }
  const auto cli = drum::cli::run({"table"});
  out.pass = out.pass && cli.exitCode == 0;
  out.detail = std::to_string(matched) + "/10 rows exact, all c < 3, `drum table` exit " +
               std::to_string(cli.exitCode);
  return out;
}

// ----------------------------------------------------------------------------
// 2. phi recomputation for M11
// ----------------------------------------------------------------------------

Outcome m11Phi() {
  const auto m11a = drum::test::namedGroup("m11_11");
  const auto m11b = drum::test::namedGroup("m11_12");
  const auto phiA = maxNonidentityFixedPoints(m11a);
  const auto phiB = maxNonidentityFixedPoints(m11b);
  const auto rows = groupTable();
  Outcome out;
  out.pass = m11a.order() == 7920 && m11b.order() == 7920 && phiA == 3 && phiB == 4 &&
             rows.size() >= 5 && rows[3].phi == 3 && rows[4].phi == 4;
  out.detail = "orders " + std::to_string(m11a.order()) + "/" + std::to_string(m11b.order()) +
               ", phi on 11 points = " + std::to_string(phiA) + ", on 12 points = " +
               std::to_string(phiB);
  return out;
}

// ----------------------------------------------------------------------------
// 3. Gassmann pair in the Fano group
// ----------------------------------------------------------------------------

Outcome fanoGassmann() {
  const auto pointGens = drum::test::groupFixture("fano_points").generators;
  const auto lineGens = drum::test::groupFixture("fano_lines").generators;
  const auto g = closure(pointGens);
  const auto h1 = pointStabilizer(g, 0);
  const auto h2 = setStabilizer(g, drum::test::fanoLine(0));
  const auto triple = almostConjugate(g, h1, h2);

  // Independent oracle: an element conjugating h1 onto h2 would have to map
  // the fixed point of h1 to a point fixed by all of h2; h2 fixes none.
  bool h2FixesAPoint = false;
  for (PointIndex x = 0; x < 7; ++x) {
    bool fixed = true;
    for (const auto& e : h2.elements()) fixed = fixed && e(x) == x;
    h2FixesAPoint = h2FixesAPoint || fixed;
  }
  const bool characters = permutationCharacterEqual(g, pointGens, lineGens);
  Outcome out;
  out.pass = g.order() == 168 && h1.order() == 24 && h2.order() == 24 && triple.almostConjugate &&
             !triple.conjugate && !h2FixesAPoint && characters;
  out.detail = "|G| = " + std::to_string(g.order()) + ", |H1| = |H2| = " +
               std::to_string(h1.order()) + ", almost conjugate " +
               (triple.almostConjugate ? "yes" : "no") + ", conjugate " +
               (triple.conjugate ? "yes" : "no") + ", characters equal " + (characters ? "yes" : "no");
  return out;
}

// ----------------------------------------------------------------------------
// 4. Tree iff fixed-point equation
// ----------------------------------------------------------------------------

Outcome treeEquation() {
  std::mt19937_64 rng(20111);
  std::size_t trees = 0, others = 0, counterexamples = 0;
  std::size_t disconnectedWithTreeEdgeCount = 0, connectedCounterexamples = 0, connectedNonTrees = 0;
  for (std::size_t trial = 0; trial < kRandomSpecs; ++trial) {
    const auto s = drum::test::randomSpec(rng, kRandomMaxTiles, kRandomMaxColors);
    // Tree oracle from counts alone: connected with N - 1 edges.
    const bool connected = isConnected(s);
    const bool tree = connected && s.edges.size() + 1 == s.tileCount;
    (tree ? trees : others)++;
    if (connected && !tree) ++connectedNonTrees;
    const bool holds = fixedPointEquationHolds(s);
    if (holds != tree || isTree(s) != tree) {
      ++counterexamples;
      if (!connected && s.edges.size() + 1 == s.tileCount) ++disconnectedWithTreeEdgeCount;
    }
    if (connected && (holds != tree || isTree(s) != tree)) ++connectedCounterexamples;
  }
  Outcome out;
  out.pass = counterexamples == 0 && trees > 0 && others > 0;
  out.detail = std::to_string(kRandomSpecs) + " specs (" + std::to_string(trees) + " trees, " +
               std::to_string(others) + " non-trees), " + std::to_string(counterexamples) +
               " counterexamples";
  if (counterexamples > 0) {
    out.notes.push_back(std::to_string(disconnectedWithTreeEdgeCount) + " of " +
                        std::to_string(counterexamples) +
                        " counterexamples are disconnected with exactly N - 1 edges (a cycle in "
                        "one component); the equation only counts edges");
    out.notes.push_back("restricted to connected specs (" + std::to_string(connectedNonTrees) +
                        " of them non-trees): " + std::to_string(connectedCounterexamples) +
                        " counterexamples");
  }
  return out;
}

// ----------------------------------------------------------------------------
// 5. Transplantation of the fixture pair
// ----------------------------------------------------------------------------

Outcome transplantation() {
  const auto a = drum::test::tilingFixture("pair7_a");
  const auto b = drum::test::tilingFixture("pair7_b");
  const auto result = classify(a, b);
  bool witnessOk = false;
  if (result.witness) {
    // Recheck T M = N T entrywise for every color, outside intertwines().
    const auto ta = involutions(a);
    const auto tb = involutions(b);
    const auto& t = *result.witness;
    witnessOk = isInvertible(t);
    for (std::size_t mu = 0; mu < ta.size(); ++mu) {
      for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) {
          // (T M)_{ij} = T_{i, θA(j)}; (N T)_{ij} = T_{θB(i), j}.
          witnessOk = witnessOk && t(i, ta[mu](static_cast<PointIndex>(j))) ==
                                       t(tb[mu](static_cast<PointIndex>(i)), j);
        }
      }
    }
  }
  // Exhaustive: no relabeling of tiles carries a's gluings to b's.
  std::vector<PointIndex> p(7);
  std::iota(p.begin(), p.end(), PointIndex{0});
  const auto ta = involutions(a);
  const auto tb = involutions(b);
  std::size_t permutationIntertwiners = 0, tried = 0;
  do {
    ++tried;
    bool ok = true;
    for (std::size_t mu = 0; mu < ta.size() && ok; ++mu) {
      for (PointIndex i = 0; i < 7 && ok; ++i) ok = p[ta[mu](i)] == tb[mu](p[i]);
    }
    if (ok) ++permutationIntertwiners;
  } while (std::next_permutation(p.begin(), p.end()));
  Outcome out;
  out.pass = result.verdict == Verdict::TransplantableNoncongruent && witnessOk &&
             permutationIntertwiners == 0 && !existsPermutationIntertwiner(a, b);
  out.detail = "verdict " + verdictName(result.verdict) + ", witness " +
               (witnessOk ? "intertwines all 3 colors" : "INVALID") + ", det T = " +
               (result.witness ? str(determinant(*result.witness)) : "-") + ", " +
               std::to_string(permutationIntertwiners) + " permutation intertwiners among " +
               std::to_string(tried) + " relabelings";
  return out;
}

// ----------------------------------------------------------------------------
// 6. Unfolding geometry
// ----------------------------------------------------------------------------

Outcome geometry() {
  const auto tile = defaultTriangle();
  const auto square = buildDomain(drum::test::tilingFixture("square2"), tile);
  const Polygon<Rational> unit{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  bool ok = square.embedded && square.boundary == unit;
  std::string areas;
  for (const auto* name : {"pair7_a", "pair7_b"}) {
    const auto d = buildDomain(drum::test::tilingFixture(name), tile);
    const auto area = polygonArea(d.boundary);
    ok = ok && d.embedded && checkEmbedding(d.placements, tile) && area == frac(7, 2);
    areas += std::string(areas.empty() ? "" : ", ") + name + " area " + str(area);
  }
  Outcome out;
  out.pass = ok;
  out.detail = std::string("square2 boundary ") + (square.boundary == unit ? "exact" : "WRONG") +
               "; " + areas + ", no overlap";
  return out;
}

// ----------------------------------------------------------------------------
// 7. Spectral oracle on the unit square
// ----------------------------------------------------------------------------

Outcome squareOracle() {
  const Polygon<Rational> unit{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const long m = 16;
  const double h = 1.0 / m;
  std::vector<double> closed;
  for (long p = 1; p < m; ++p) {
    for (long q = 1; q < m; ++q) {
      closed.push_back(2 / (h * h) *
                       (2 - std::cos(std::numbers::pi * p * h) - std::cos(std::numbers::pi * q * h)));
    }
  }
  std::sort(closed.begin(), closed.end());
  const std::size_t k = 6;
  const auto s = dirichletEigenvalues(rasterize(unit, frac(1, m)), k);
  double worst = 0;
  for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(s.eigenvalues[i] - closed[i]) / closed[i]);

  const auto study = refinementStudy(unit, {frac(1, 16), frac(1, 32), frac(1, 64)}, 1);
  const double order = study.observedOrder.empty() ? 0 : study.observedOrder[0];
  const double limit = 2 * std::numbers::pi * std::numbers::pi;
  bool monotone = true;
  for (std::size_t i = 1; i < study.spectra.size(); ++i) {
    monotone = monotone && study.spectra[i].eigenvalues[0] > study.spectra[i - 1].eigenvalues[0] &&
               study.spectra[i].eigenvalues[0] < limit;
  }
  Outcome out;
  out.pass = worst <= kSquareOracleTol && order >= kMinObservedOrder && monotone;
  out.detail = "closed form max rel err " + sci(worst) + " (tol " + sci(kSquareOracleTol) +
               "), lambda1 order " + std::to_string(order).substr(0, 6) + " (min " +
               std::to_string(kMinObservedOrder).substr(0, 3) + "), Richardson " +
               std::to_string(study.extrapolated[0]).substr(0, 9) + " vs 2pi^2 " +
               std::to_string(limit).substr(0, 9);
  return out;
}

// ----------------------------------------------------------------------------
// 8. Isospectrality evidence
// ----------------------------------------------------------------------------

Outcome isospectralEvidence() {
  const auto tile = defaultTriangle();
  const auto boundary = [&](const char* name) {
    return buildDomain(drum::test::tilingFixture(name), tile).boundary;
  };
  const auto pa = boundary("pair7_a");
  const auto pb = boundary("pair7_b");
  const auto study = pairStudy(pa, pb, {frac(1, 32), frac(1, 64)}, 6, kPairRelTol);
  const double gap32 = study.comparisons[0].maxRelativeDifference;
  const double gap64 = study.comparisons[1].maxRelativeDifference;
  const bool within = study.comparisons[1].pass;

  const auto ca = boundary("control7_a");
  const auto cb = boundary("control7_b");
  const auto sa = dirichletEigenvalues(rasterize(ca, frac(1, 64)), 6);
  const auto sb = dirichletEigenvalues(rasterize(cb, frac(1, 64)), 6);
  const auto control = compareSpectra(sa, sb, kPairRelTol);
  const double lambda2Gap = control.relativeDifferences[1];
  const bool equalArea = polygonArea(ca) == polygonArea(cb) && polygonArea(ca) == polygonArea(pa);
  const bool controlNotTransplantable =
      classify(drum::test::tilingFixture("control7_a"), drum::test::tilingFixture("control7_b"))
          .verdict == Verdict::NotTransplantable;

  Outcome out;
  out.pass = within && gap64 < gap32 && lambda2Gap > kControlMinGap && equalArea &&
             controlNotTransplantable;
  out.detail = "pair max rel diff " + sci(gap32) + " at h=1/32, " + sci(gap64) +
               " at h=1/64 (tol " + sci(kPairRelTol) + "); control lambda2 rel diff " +
               sci(lambda2Gap) + " (min " + sci(kControlMinGap) + ")";
  if (std::max(gap32, gap64) < 1e-10) {
    out.notes.push_back(
        "both pair gaps are at floating-point level: lattice-aligned tiles make the grid "
        "operators exactly isospectral, so the h-ordering reflects rounding only");
  }
  return out;
}

// ----------------------------------------------------------------------------
// 9. Small-N landscape
// ----------------------------------------------------------------------------

Outcome smallN() {
  bool ok = true;
  std::ostringstream detail;
  detail << "pairs by N:";
  for (std::size_t n = 2; n <= 7; ++n) {
    SearchConfig cfg;
    cfg.tileCount = n;
    cfg.colorCount = 3;
    const auto catalog = buildPairCatalog(enumerateTreeTilings(cfg).specs);
    detail << " " << n << ":" << catalog.entries.size();
    if (n < 7) {
      ok = ok && catalog.entries.empty();
    } else {
      ok = ok && !catalog.entries.empty();
      for (const auto& e : catalog.entries) {
        // Recompute the group from scratch rather than trusting the entry.
        const auto g = operatorGroup(e.specA);
        ok = ok && g.order() == 168 && isTwoTransitive(g) && e.groupOrder == 168 && e.twoTransitive;
      }
    }
  }
  detail << "; every N = 7 operator group has order 168 and is 2-transitive";
  Outcome out;
  out.pass = ok;
  out.detail = detail.str();
  return out;
}

// ----------------------------------------------------------------------------
// 10. Affine involution bound
// ----------------------------------------------------------------------------

Outcome affineBound() {
  bool ok = true;
  std::ostringstream detail;
  for (auto [q, n] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    const auto invs = affineInvolutions(q, n);
    std::size_t bound = 1;
    for (unsigned i = 1; i < n; ++i) bound *= q;
    std::size_t violations = 0, maxFix = 0;
    for (const auto& t : invs) {
      maxFix = std::max(maxFix, t.fixedPoints());
      if (t.fixedPoints() > bound) ++violations;
    }
    ok = ok && violations == 0 && !invs.empty() && affineInvolutionBoundHolds(q, n, invs);
    detail << "(" << q << "," << n << "): " << invs.size() << " involutions, max Fix " << maxFix
           << " <= " << bound << "; ";
  }
  Outcome out;
  out.pass = ok;
  out.detail = detail.str() + "0 violations";
  if (!ok) out.detail = detail.str() + "VIOLATION";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "table reproduction", 1, tableReproduction},
      {2, "phi recomputation for M11", 30, m11Phi},
      {3, "Gassmann pair in the Fano group", 10, fanoGassmann},
      {4, "tree iff fixed-point equation", 600, treeEquation},
      {5, "transplantation of the 7-tile pair", 5, transplantation},
      {6, "unfolding geometry", 60, geometry},
      {7, "spectral oracle on the unit square", 300, squareOracle},
      {8, "isospectrality evidence", 300, isospectralEvidence},
      {9, "small-N landscape", 600, smallN},
      {10, "affine involution bound", 30, affineBound},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("threw: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool inTime = seconds <= c.limitSeconds;
    const bool pass = outcome.pass && inTime;
    if (!pass) ++failures;
    std::printf("[%s] %2d %-36s %8.2f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                seconds, c.limitSeconds, outcome.detail.c_str(), inTime ? "" : "  OVER TIME LIMIT");
    for (const auto& note : outcome.notes) std::printf("       note: %s\n", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
