#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "drum/error.hpp"
#include "drum/permgroup.hpp"
#include "fixtures.hpp"

using namespace drum;
using drum::test::cycle;

namespace {

// Class sizes by brute force: the conjugates of x under every element.
std::multiset<std::size_t> bruteClassSizes(const PermutationGroup& g) {
  std::set<Permutation> assigned;
  std::multiset<std::size_t> sizes;
  for (const auto& x : g.elements()) {
    if (assigned.count(x)) continue;
    std::set<Permutation> cls;
    for (const auto& c : g.elements()) cls.insert(conjugate(c, x));
    assigned.insert(cls.begin(), cls.end());
    sizes.insert(cls.size());
  }
  return sizes;
}

Permutation randomPermutation(std::size_t n, std::mt19937& rng) {
  std::vector<PointIndex> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<PointIndex>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

}  // namespace

TEST_CASE("permutation construction rejects non-bijections") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), Error);
  CHECK(Permutation({2, 0, 1}).inverse() == Permutation({1, 2, 0}));
  CHECK(cycle(5, {0, 1, 2}).cycleString() == "(0 1 2)");
  CHECK(Permutation::identity(3).cycleString() == "()");
}

TEST_CASE("compose applies the right factor first") {
  const auto a = Permutation::fromCycles(4, {{0, 1}});
  const auto b = Permutation::fromCycles(4, {{1, 2}});
  const auto p = compose(a, b);
  // 1 -> 2 -> 0 -> 1, 3 fixed.
  CHECK(p(1) == 2);
  CHECK(p(2) == 0);
  CHECK(p(0) == 1);
  CHECK(p(3) == 3);
  for (PointIndex i = 0; i < 4; ++i) CHECK(p(i) == a(b(i)));
  CHECK(compose(Permutation::identity(4), a) == a);
  CHECK(compose(a, a).isIdentity());
  CHECK_THROWS_AS(compose(a, Permutation::identity(3)), Error);
}

TEST_CASE("fixed points") {
  CHECK(Permutation::identity(7).fixedPoints() == 7);
  CHECK(cycle(7, {0, 1}).fixedPoints() == 5);
  CHECK(Permutation::fromCycles(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}).fixedPoints() == 0);
}

TEST_CASE("closure orders") {
  CHECK(closure({cycle(2, {0, 1})}).order() == 2);
  CHECK(drum::test::symmetricGroup(4).order() == 24);
  const auto fano = drum::test::namedGroup("fano_points");
  CHECK(fano.order() == 168);
  CHECK(fano.order() == 7 * pointStabilizer(fano, 0).order());
  CHECK(drum::test::namedGroup("m11_11").order() == 7920);
  CHECK(drum::test::namedGroup("m11_12").order() == 7920);
  CHECK_THROWS_AS(closure({cycle(3, {0, 1}), Permutation::identity(4)}), Error);
}

TEST_CASE("closure cap raises a distinct error") {
  try {
    closure({cycle(6, {0, 1}), cycle(6, {0, 1, 2, 3, 4, 5})}, 100);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("closure is deterministic and starts at the identity") {
  const auto gens = drum::test::groupFixture("fano_points").generators;
  const auto a = closure(gens);
  const auto b = closure(gens);
  REQUIRE(a.order() == b.order());
  CHECK(std::equal(a.elements().begin(), a.elements().end(), b.elements().begin()));
  CHECK(a.elements()[0].isIdentity());
}

TEST_CASE("group elements are closed under composition and inverse") {
  const auto g = drum::test::namedGroup("fano_points");
  for (const auto& x : g.elements()) {
    CHECK(g.contains(x.inverse()));
    for (const auto& gen : g.generators()) CHECK(g.contains(compose(gen, x)));
  }
}

TEST_CASE("conjugacy classes") {
  const auto c2 = closure({cycle(2, {0, 1})});
  CHECK(conjugacyClasses(c2).classes.size() == 2);

  const auto s3 = drum::test::symmetricGroup(3);
  auto table = conjugacyClasses(s3);
  std::multiset<std::size_t> sizes;
  for (const auto& c : table.classes) sizes.insert(c.size);
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
  CHECK(sizes == bruteClassSizes(s3));

  const auto fano = drum::test::namedGroup("fano_points");
  table = conjugacyClasses(fano);
  sizes.clear();
  for (const auto& c : table.classes) sizes.insert(c.size);
  CHECK(table.classes.size() == 6);
  CHECK(sizes == std::multiset<std::size_t>{1, 21, 24, 24, 42, 56});
  CHECK(sizes == bruteClassSizes(fano));
  CHECK(table.classes[table.classOf[0]].size == 1);
}

TEST_CASE("class equation and representatives pairwise non-conjugate") {
  for (const auto& g : {drum::test::symmetricGroup(5), drum::test::namedGroup("fano_points")}) {
    const auto table = conjugacyClasses(g);
    std::size_t total = 0;
    for (const auto& c : table.classes) total += c.size;
    CHECK(total == g.order());
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
      const auto idx = *g.indexOf(table.classes[i].representative);
      CHECK(table.classOf[idx] == i);
    }
  }
}

TEST_CASE("maximal fixed points of nonidentity elements") {
  CHECK(maxNonidentityFixedPoints(drum::test::symmetricGroup(3)) == 1);
  CHECK(maxNonidentityFixedPoints(drum::test::namedGroup("m11_11")) == 3);
  CHECK(maxNonidentityFixedPoints(drum::test::namedGroup("m11_12")) == 4);
  CHECK(maxNonidentityFixedPoints(drum::test::namedGroup("fano_points")) == 3);
  CHECK_THROWS_AS(maxNonidentityFixedPoints(closure({Permutation::identity(3)})), Error);
}

TEST_CASE("two-transitivity") {
  CHECK(isTwoTransitive(drum::test::symmetricGroup(4)));
  CHECK_FALSE(isTwoTransitive(closure({cycle(4, {0, 1, 2, 3})})));
  CHECK(isTwoTransitive(drum::test::namedGroup("fano_points")));
  CHECK(isTwoTransitive(drum::test::namedGroup("m11_12")));
  CHECK(isTwoTransitive(drum::test::namedGroup("m12")));
}

TEST_CASE("Burnside: mean of Fix^k counts orbits on k-tuples") {
  for (const auto& name : {"fano_points", "fano_lines", "m11_11"}) {
    const auto g = drum::test::namedGroup(name);
    CHECK(isTransitive(g));
    CHECK(meanFixedPointPower(g, 1) == 1);
    CHECK(isTwoTransitive(g));
    CHECK(meanFixedPointPower(g, 2) == 2);
  }
  const auto c4 = closure({cycle(4, {0, 1, 2, 3})});
  CHECK(meanFixedPointPower(c4, 2) == 4);  // 16 ordered pairs in orbits of size 4
}

TEST_CASE("stabilizers and orbit-stabilizer") {
  const auto fano = drum::test::namedGroup("fano_points");
  CHECK(pointStabilizer(fano, 0).order() == 24);
  CHECK(pointStabilizer(drum::test::namedGroup("m11_11"), 4).order() == 720);
  const auto trivial = closure({Permutation::identity(3)});
  CHECK(pointStabilizer(trivial, 1).order() == 1);
  CHECK_THROWS_AS(pointStabilizer(fano, 7), Error);

  const auto c = closure({cycle(6, {0, 1, 2}), cycle(6, {3, 4})});
  for (PointIndex x = 0; x < 6; ++x) {
    CHECK(pointStabilizer(c, x).order() * orbit(c, x).size() == c.order());
  }
  CHECK(setStabilizer(fano, drum::test::fanoLine(0)).order() == 24);
}

TEST_CASE("almost conjugate subgroups") {
  const auto fano = drum::test::namedGroup("fano_points");
  const auto point = pointStabilizer(fano, 0);
  const auto line = setStabilizer(fano, drum::test::fanoLine(0));

  const auto same = almostConjugate(fano, point, point);
  CHECK(same.almostConjugate);
  CHECK(same.conjugate);

  const auto twoPoints = almostConjugate(fano, point, pointStabilizer(fano, 5));
  CHECK(twoPoints.conjugate);
  CHECK(twoPoints.almostConjugate);

  const auto gassmann = almostConjugate(fano, point, line);
  CHECK(gassmann.almostConjugate);
  CHECK_FALSE(gassmann.conjugate);
  CHECK(gassmann.isGassmannPair());
  for (const auto& [a, b] : gassmann.classCounts) CHECK(a == b);
  // Independent check of non-conjugacy: no element maps point to line.
  std::size_t hits = 0;
  for (const auto& c : fano.elements()) {
    bool all = true;
    for (const auto& x : point.elements()) all = all && line.contains(conjugate(c, x));
    hits += all;
  }
  CHECK(hits == 0);

  const auto reversed = almostConjugate(fano, line, point);
  CHECK(reversed.almostConjugate == gassmann.almostConjugate);
  CHECK(reversed.conjugate == gassmann.conjugate);

  CHECK_THROWS_AS(almostConjugate(fano, point, subgroupGeneratedBy(fano, {})), Error);
  const auto other = drum::test::namedGroup("fano_points");
  CHECK_THROWS_AS(almostConjugate(fano, point, pointStabilizer(other, 0)), Error);
}

TEST_CASE("random conjugates of random subgroups are almost conjugate") {
  std::mt19937 rng(7);
  for (const auto& g : {drum::test::symmetricGroup(5), drum::test::namedGroup("fano_points"),
                        drum::test::symmetricGroup(6)}) {
    const auto all = g.elements();
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 6; ++trial) {
      const auto h = subgroupGeneratedBy(g, {all[pick(rng)], all[pick(rng)]});
      const auto& c = all[pick(rng)];
      std::vector<Permutation> conj;
      for (const auto& x : h.elements()) conj.push_back(conjugate(c, x));
      const auto h2 = subgroupGeneratedBy(g, conj);
      const auto triple = almostConjugate(g, h, h2);
      CHECK(triple.almostConjugate);
      CHECK(triple.conjugate);
    }
  }
}

TEST_CASE("permutation characters") {
  const auto pointGens = drum::test::groupFixture("fano_points").generators;
  const auto lineGens = drum::test::groupFixture("fano_lines").generators;
  const auto fano = closure(pointGens);
  CHECK(permutationCharacterEqual(fano, pointGens, pointGens));
  CHECK(permutationCharacterEqual(fano, pointGens, lineGens));

  const auto c2 = closure({cycle(2, {0, 1})});
  const auto oneFixed = Permutation::fromCycles(5, {{0, 1}, {2, 3}});
  const auto threeFixed = Permutation::fromCycles(5, {{0, 1}});
  CHECK_FALSE(permutationCharacterEqual(c2, {oneFixed}, {threeFixed}));
  CHECK(permutationCharacterEqual(c2, {oneFixed}, {oneFixed}));
  // A 3-cycle is not the image of an involution.
  CHECK_THROWS_AS(permutationCharacterEqual(c2, {oneFixed}, {cycle(5, {0, 1, 2})}), Error);
}

TEST_CASE("permutation character of an action equals itself") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Permutation> gens{randomPermutation(6, rng), randomPermutation(6, rng)};
    const auto g = closure(gens);
    CHECK(permutationCharacterEqual(g, gens, gens));
  }
}

TEST_CASE("order divides degree factorial") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = closure({randomPermutation(6, rng), randomPermutation(6, rng)});
    CHECK(720 % g.order() == 0);
  }
}

TEST_CASE("empty group handle refuses queries") {
  PermutationGroup g;
  CHECK_FALSE(g.materialized());
  CHECK_THROWS_AS(g.order(), Error);
}
