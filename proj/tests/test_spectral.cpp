#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "drum/error.hpp"
#include "drum/spectral.hpp"
#include "drum/unfold.hpp"
#include "fixtures.hpp"

using namespace drum;

namespace {

const Polygon<Rational> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

Rational inv(long m) {
  Rational r(1, m);
  r.canonicalize();
  return r;
}

std::vector<double> squareClosedForm(long m, std::size_t k) {
  const double h = 1.0 / static_cast<double>(m);
  std::vector<double> all;
  for (long p = 1; p < m; ++p) {
    for (long q = 1; q < m; ++q) {
      all.push_back(2.0 / (h * h) *
                    (2.0 - std::cos(std::numbers::pi * p * h) - std::cos(std::numbers::pi * q * h)));
    }
  }
  std::sort(all.begin(), all.end());
  all.resize(k);
  return all;
}

Polygon<Rational> fixtureBoundary(const char* name) {
  return buildDomain(drum::test::tilingFixture(name), defaultTriangle()).boundary;
}

ErrorKind kindOf(const auto& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("tiny square grids") {
  const auto coarse = rasterize(kUnitSquare, inv(2));
  CHECK(coarse.nx == 3);
  CHECK(coarse.interiorCount() == 1);
  CHECK(coarse.at(1, 1));
  const auto one = dirichletEigenvalues(coarse, 1);
  CHECK(one.eigenvalues[0] == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(one.method == "dense");

  CHECK(rasterize(kUnitSquare, inv(4)).interiorCount() == 9);
  // Boundary nodes are outside.
  const auto mask = rasterize(kUnitSquare, inv(4));
  for (std::size_t i = 0; i < mask.nx; ++i) {
    CHECK_FALSE(mask.at(i, 0));
    CHECK_FALSE(mask.at(0, i));
  }
}

TEST_CASE("square closed form on the dense path") {
  const auto s = dirichletEigenvalues(rasterize(kUnitSquare, inv(16)), 6);
  const auto expected = squareClosedForm(16, 6);
  CHECK(s.unknowns == 225);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(s.eigenvalues[i] - expected[i]) / expected[i] < 1e-10);
    CHECK(s.residuals[i] <= 1e-8);
  }
}

TEST_CASE("square closed form on the iterative path") {
  const auto s = dirichletEigenvalues(rasterize(kUnitSquare, inv(64)), 6);
  const auto expected = squareClosedForm(64, 6);
  CHECK(s.unknowns == 63 * 63);
  CHECK(s.method == "shift-invert subspace");
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(s.eigenvalues[i] - expected[i]) / expected[i] < 1e-8);
    CHECK(s.residuals[i] <= 1e-8);
  }
  // Forcing the iterative solver on a dense-sized problem agrees with dense.
  EigenOptions iterative;
  iterative.denseThreshold = 0;
  const auto mask = rasterize(kUnitSquare, inv(16));
  const auto a = dirichletEigenvalues(mask, 4, iterative);
  const auto b = dirichletEigenvalues(mask, 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-9 * b.eigenvalues[i]);
}

TEST_CASE("refinement toward 2 pi^2") {
  const auto study = refinementStudy(kUnitSquare, {inv(8), inv(16), inv(32)}, 1);
  const double exact = 2 * std::numbers::pi * std::numbers::pi;
  REQUIRE(study.spectra.size() == 3);
  CHECK(study.spectra[0].eigenvalues[0] < study.spectra[1].eigenvalues[0]);
  CHECK(study.spectra[1].eigenvalues[0] < study.spectra[2].eigenvalues[0]);
  CHECK(study.spectra[2].eigenvalues[0] < exact);
  REQUIRE(study.observedOrder.size() == 1);
  CHECK(study.observedOrder[0] == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::abs(study.extrapolated[0] - exact) / exact < 1e-4);
}

TEST_CASE("lattice point count on the seven-tile domains") {
  // Pick: area 7/2 at spacing 1/64 is 14336 cells; 576 boundary lattice points.
  for (const auto* name : {"pair7_a", "pair7_b"}) {
    const auto mask = rasterize(fixtureBoundary(name), inv(64));
    CHECK(mask.interiorCount() == 14336 - 576 / 2 + 1);
  }
}

TEST_CASE("translated and rotated copies share the spectrum") {
  const auto a = fixtureBoundary("pair7_a");
  Polygon<Rational> shifted, rotated;
  for (const auto& p : a) {
    shifted.push_back({p.x + 5, p.y - 3});
    rotated.push_back({-p.y, p.x});
  }
  const auto base = dirichletEigenvalues(rasterize(a, inv(8)), 6);
  CHECK(dirichletEigenvalues(rasterize(shifted, inv(8)), 6).eigenvalues == base.eigenvalues);
  const auto turned = dirichletEigenvalues(rasterize(rotated, inv(8)), 6);
  CHECK(compareSpectra(base, turned, 1e-12).pass);
}

TEST_CASE("domain monotonicity on nested masks") {
  std::mt19937_64 rng(5);
  const auto full = rasterize(kUnitSquare, inv(12));
  const double lambda = dirichletEigenvalues(full, 1).eigenvalues[0];
  for (int trial = 0; trial < 20; ++trial) {
    auto nested = full;
    std::uniform_int_distribution<std::size_t> pick(0, nested.inside.size() - 1);
    for (int r = 0; r < 5; ++r) nested.inside[pick(rng)] = 0;
    if (nested.interiorCount() == 0) continue;
    CHECK(dirichletEigenvalues(nested, 1).eigenvalues[0] >= lambda * (1 - 1e-12));
  }
}

TEST_CASE("scaling polygon and spacing together") {
  const auto a = fixtureBoundary("pair7_b");
  for (long s : {2, 3}) {
    Polygon<Rational> scaled;
    for (const auto& p : a) scaled.push_back({p.x * s, p.y * s});
    const auto small = dirichletEigenvalues(rasterize(a, inv(8)), 4);
    const auto big = dirichletEigenvalues(rasterize(scaled, Rational(Rational(s) / 8)), 4);
    CHECK(small.unknowns == big.unknowns);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(big.eigenvalues[i] * s * s == doctest::Approx(small.eigenvalues[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("square against a rectangle of equal area") {
  const Polygon<Rational> rect{{0, 0}, {2, 0}, {2, inv(2)}, {0, inv(2)}};
  const auto sq = dirichletEigenvalues(rasterize(kUnitSquare, inv(32)), 2);
  const auto re = dirichletEigenvalues(rasterize(rect, inv(32)), 2);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(sq.eigenvalues[0] - 2 * pi2) / (2 * pi2) < 1e-2);
  CHECK(std::abs(re.eigenvalues[0] - pi2 * (0.25 + 4)) / (pi2 * 4.25) < 1e-2);
  const auto cmp = compareSpectra(sq, re, 1e-2);
  CHECK_FALSE(cmp.pass);
  CHECK(cmp.maxRelativeDifference > 0.5);
  CHECK(compareSpectra(sq, sq, 0).pass);
}

TEST_CASE("floating point polygons") {
  const Polygon<double> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto mask = rasterize(square, 1.0 / 16);
  CHECK(mask.interiorCount() == 225);
  const auto study = refinementStudy(square, {1.0 / 8, 1.0 / 16}, 2);
  CHECK(study.observedOrder.empty());
  CHECK(study.extrapolated.size() == 2);
}

TEST_CASE("pair study on the fixtures at coarse spacing") {
  const auto study = pairStudy(fixtureBoundary("pair7_a"), fixtureBoundary("pair7_b"),
                               {inv(4), inv(8)}, 3, 1e-2);
  REQUIRE(study.comparisons.size() == 2);
  for (const auto& c : study.comparisons) CHECK(c.pass);

  const auto control = pairStudy(fixtureBoundary("control7_a"), fixtureBoundary("control7_b"),
                                 {inv(8)}, 3, 1e-2);
  CHECK_FALSE(control.comparisons[0].pass);
}

TEST_CASE("errors") {
  CHECK(kindOf([] { rasterize(kUnitSquare, Rational(0)); }) == ErrorKind::InvalidInput);
  CHECK(kindOf([] { rasterize(Polygon<Rational>{{0, 0}, {1, 0}}, inv(4)); }) == ErrorKind::InvalidInput);
  RasterOptions tight;
  tight.maxNodesPerAxis = 10;
  CHECK(kindOf([&] { rasterize(kUnitSquare, inv(64), tight); }) == ErrorKind::BudgetExceeded);
  const auto empty = rasterize(kUnitSquare, Rational(1));
  CHECK(empty.interiorCount() == 0);
  CHECK(kindOf([&] { dirichletEigenvalues(empty, 1); }) == ErrorKind::InvalidInput);
  const auto mask = rasterize(kUnitSquare, inv(4));
  CHECK(kindOf([&] { dirichletEigenvalues(mask, 0); }) == ErrorKind::InvalidInput);
  CHECK(kindOf([&] { dirichletEigenvalues(mask, 10); }) == ErrorKind::InvalidInput);
  const auto a = dirichletEigenvalues(mask, 2);
  const auto b = dirichletEigenvalues(rasterize(kUnitSquare, inv(8)), 2);
  CHECK(kindOf([&] { compareSpectra(a, b, 0.1); }) == ErrorKind::InvalidInput);
  CHECK(kindOf([&] { compareSpectra(a, dirichletEigenvalues(mask, 1), 0.1); }) == ErrorKind::InvalidInput);
  CHECK(kindOf([] { refinementStudy(kUnitSquare, {inv(8), inv(4)}, 1); }) == ErrorKind::InvalidInput);
  CHECK(kindOf([] { refinementStudy(kUnitSquare, std::vector<Rational>{}, 1); }) == ErrorKind::InvalidInput);
  EigenOptions stingy;
  stingy.denseThreshold = 0;
  stingy.maxIterations = 1;
  stingy.tolerance = 1e-300;
  CHECK(kindOf([&] { dirichletEigenvalues(rasterize(kUnitSquare, inv(16)), 4, stingy); }) ==
        ErrorKind::NotConverged);
}
