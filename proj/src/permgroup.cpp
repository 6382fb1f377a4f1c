#include "drum/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "drum/error.hpp"

namespace drum {

const PermutationGroup::Data& PermutationGroup::data() const {
  if (!data_) fail(ErrorKind::InvalidInput, "group elements not materialized");
  return *data_;
}

std::size_t PermutationGroup::degree() const { return data().degree; }
std::size_t PermutationGroup::order() const { return data().elements.size(); }

const std::vector<Permutation>& PermutationGroup::generators() const {
  return data().generators;
}

std::span<const Permutation> PermutationGroup::elements() const {
  return data().elements;
}

std::optional<std::size_t> PermutationGroup::indexOf(
    const Permutation& p) const {
  const auto& idx = data().index;
  if (auto it = idx.find(p); it != idx.end()) return it->second;
  return std::nullopt;
}

PermutationGroup closure(std::vector<Permutation> generators, std::size_t cap) {
  if (generators.empty()) {
    fail(ErrorKind::InvalidInput, "closure: empty generator list");
  }
  const std::size_t degree = generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      fail(ErrorKind::InvalidInput, "closure: generator degree mismatch");
    }
  }
  auto data = std::make_shared<PermutationGroup::Data>();
  data->degree = degree;
  data->generators = std::move(generators);
  data->elements.push_back(Permutation::identity(degree));
  data->index.emplace(data->elements.back(), 0);
  for (std::size_t head = 0; head < data->elements.size(); ++head) {
    for (const auto& gen : data->generators) {
      Permutation next = compose(gen, data->elements[head]);
      if (data->index.contains(next)) continue;
      if (data->elements.size() >= cap) {
        fail(ErrorKind::CapExceeded,
             "group order exceeds materialization cap of " +
                 std::to_string(cap));
      }
      data->index.emplace(next, data->elements.size());
      data->elements.push_back(std::move(next));
    }
  }
  PermutationGroup group;
  group.data_ = std::move(data);
  return group;
}

Subgroup::Subgroup(PermutationGroup parent,
                   std::vector<std::size_t> elementIndices)
    : parent_(std::move(parent)), indices_(std::move(elementIndices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  member_.assign(parent_.order(), false);
  for (std::size_t i : indices_) {
    if (i >= member_.size()) {
      fail(ErrorKind::InvalidInput, "subgroup index outside parent");
    }
    member_[i] = true;
  }
}

bool Subgroup::contains(const Permutation& p) const {
  const auto i = parent_.indexOf(p);
  return i && member_[*i];
}

std::vector<Permutation> Subgroup::elements() const {
  std::vector<Permutation> out;
  out.reserve(indices_.size());
  const auto all = parent_.elements();
  for (std::size_t i : indices_) out.push_back(all[i]);
  return out;
}

Subgroup subgroupGeneratedBy(const PermutationGroup& parent,
                             const std::vector<Permutation>& generators) {
  std::vector<std::size_t> genIdx;
  for (const auto& g : generators) {
    const auto i = parent.indexOf(g);
    if (!i) fail(ErrorKind::InvalidInput, "generator is not in the parent group");
    genIdx.push_back(*i);
  }
  const auto all = parent.elements();
  std::vector<bool> seen(parent.order(), false);
  std::vector<std::size_t> members{0};
  seen[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (std::size_t gi : genIdx) {
      const auto next = *parent.indexOf(compose(all[gi], all[members[head]]));
      if (!seen[next]) {
        seen[next] = true;
        members.push_back(next);
      }
    }
  }
  return Subgroup(parent, std::move(members));
}

ConjugacyClassTable conjugacyClasses(const PermutationGroup& g) {
  const auto all = g.elements();
  const auto& gens = g.generators();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  ConjugacyClassTable table;
  table.classOf.assign(all.size(), kUnassigned);
  for (std::size_t start = 0; start < all.size(); ++start) {
    if (table.classOf[start] != kUnassigned) continue;
    const std::size_t id = table.classes.size();
    // Orbit under conjugation by generators reaches the whole class.
    std::vector<std::size_t> queue{start};
    table.classOf[start] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& s : gens) {
        const auto next = *g.indexOf(conjugate(s, all[queue[head]]));
        if (table.classOf[next] == kUnassigned) {
          table.classOf[next] = id;
          queue.push_back(next);
        }
      }
    }
    table.classes.push_back({all[start], queue.size()});
  }
  return table;
}

std::size_t maxNonidentityFixedPoints(const PermutationGroup& g) {
  if (g.order() < 2) fail(ErrorKind::InvalidInput, "trivial group");
  std::size_t best = 0;
  for (const auto& e : g.elements()) {
    if (!e.isIdentity()) best = std::max(best, e.fixedPoints());
  }
  return best;
}

std::vector<PointIndex> orbit(const PermutationGroup& g, PointIndex x) {
  if (x >= g.degree()) fail(ErrorKind::InvalidInput, "point out of range");
  std::vector<bool> seen(g.degree(), false);
  std::vector<PointIndex> out{x};
  seen[x] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& s : g.generators()) {
      const PointIndex y = s(out[head]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

bool isTransitive(const PermutationGroup& g) {
  return orbit(g, 0).size() == g.degree();
}

bool isTwoTransitive(const PermutationGroup& g) {
  const std::size_t n = g.degree();
  if (n < 2) return false;
  std::vector<bool> seen(n * n, false);
  std::deque<std::pair<PointIndex, PointIndex>> queue{{0, 1}};
  seen[1] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& s : g.generators()) {
      const PointIndex x = s(a), y = s(b);
      if (!seen[x * n + y]) {
        seen[x * n + y] = true;
        ++count;
        queue.emplace_back(x, y);
      }
    }
  }
  return count == n * (n - 1);
}

Subgroup pointStabilizer(const PermutationGroup& g, PointIndex x) {
  if (x >= g.degree()) fail(ErrorKind::InvalidInput, "point out of range");
  std::vector<std::size_t> members;
  const auto all = g.elements();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i](x) == x) members.push_back(i);
  }
  return Subgroup(g, std::move(members));
}

Subgroup setStabilizer(const PermutationGroup& g,
                       const std::vector<PointIndex>& points) {
  std::vector<bool> inSet(g.degree(), false);
  for (PointIndex p : points) {
    if (p >= g.degree()) fail(ErrorKind::InvalidInput, "point out of range");
    inSet[p] = true;
  }
  std::vector<std::size_t> members;
  const auto all = g.elements();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const bool keeps = std::all_of(points.begin(), points.end(),
                                   [&](PointIndex p) { return inSet[all[i](p)]; });
    if (keeps) members.push_back(i);
  }
  return Subgroup(g, std::move(members));
}

namespace {

void requireSubgroupsOf(const PermutationGroup& g, const Subgroup& h1,
                        const Subgroup& h2) {
  if (!h1.parent().sameAs(g) || !h2.parent().sameAs(g)) {
    fail(ErrorKind::InvalidInput, "subgroup parent mismatch");
  }
}

}  // namespace

std::optional<Permutation> conjugatingElement(const PermutationGroup& g,
                                              const Subgroup& h1,
                                              const Subgroup& h2) {
  requireSubgroupsOf(g, h1, h2);
  if (h1.order() != h2.order()) return std::nullopt;
  const auto h1Elements = h1.elements();
  for (const auto& c : g.elements()) {
    const bool maps = std::all_of(
        h1Elements.begin(), h1Elements.end(),
        [&](const Permutation& x) { return h2.contains(conjugate(c, x)); });
    if (maps) return c;
  }
  return std::nullopt;
}

GassmannTriple almostConjugate(const PermutationGroup& g, const Subgroup& h1,
                               const Subgroup& h2) {
  requireSubgroupsOf(g, h1, h2);
  if (h1.order() != h2.order()) {
    fail(ErrorKind::InvalidInput, "subgroup order mismatch");
  }
  const auto table = conjugacyClasses(g);
  GassmannTriple result{g, h1, h2, {}, false, false, std::nullopt};
  result.classCounts.assign(table.classes.size(), {0, 0});
  for (std::size_t i : h1.indices()) ++result.classCounts[table.classOf[i]].first;
  for (std::size_t i : h2.indices()) ++result.classCounts[table.classOf[i]].second;
  result.almostConjugate =
      std::all_of(result.classCounts.begin(), result.classCounts.end(),
                  [](const auto& c) { return c.first == c.second; });
  // Conjugate subgroups are always almost conjugate.
  if (result.almostConjugate) {
    result.conjugator = conjugatingElement(g, h1, h2);
    result.conjugate = result.conjugator.has_value();
  }
  return result;
}

namespace {

Permutation directSum(std::span<const Permutation> parts) {
  std::vector<PointIndex> images;
  PointIndex offset = 0;
  for (const auto& p : parts) {
    for (PointIndex v : p.images()) images.push_back(v + offset);
    offset += static_cast<PointIndex>(p.degree());
  }
  return Permutation(std::move(images));
}

std::size_t fixedPointsIn(const Permutation& p, std::size_t begin,
                          std::size_t end) {
  std::size_t count = 0;
  for (std::size_t i = begin; i < end; ++i) count += p(static_cast<PointIndex>(i)) == i;
  return count;
}

std::size_t commonDegree(const std::vector<Permutation>& perms) {
  if (perms.empty()) fail(ErrorKind::InvalidInput, "empty action");
  for (const auto& p : perms) {
    if (p.degree() != perms.front().degree()) {
      fail(ErrorKind::InvalidInput, "action degree mismatch");
    }
  }
  return perms.front().degree();
}

}  // namespace

bool permutationCharacterEqual(const PermutationGroup& g,
                               const std::vector<Permutation>& action1,
                               const std::vector<Permutation>& action2) {
  const auto& gens = g.generators();
  if (action1.size() != gens.size() || action2.size() != gens.size()) {
    fail(ErrorKind::InvalidInput, "action must give one image per generator");
  }
  const std::size_t d0 = g.degree();
  const std::size_t d1 = commonDegree(action1);
  const std::size_t d2 = commonDegree(action2);
  if (d1 != d2) fail(ErrorKind::InvalidInput, "actions differ in degree");
  std::vector<Permutation> combined;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Permutation parts[] = {gens[i], action1[i], action2[i]};
    combined.push_back(directSum(parts));
  }
  // The combined group projects onto g; it is no larger iff both actions
  // are well defined on g.
  PermutationGroup joint;
  try {
    joint = closure(std::move(combined), g.order());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    fail(ErrorKind::InvalidInput,
         "action images do not extend to a homomorphism of the group");
  }
  for (const auto& e : joint.elements()) {
    if (fixedPointsIn(e, d0, d0 + d1) != fixedPointsIn(e, d0 + d1, d0 + 2 * d1)) {
      return false;
    }
  }
  return true;
}

bool diagonalCharacterEqual(const std::vector<Permutation>& a,
                            const std::vector<Permutation>& b,
                            std::size_t cap) {
  if (a.size() != b.size()) {
    fail(ErrorKind::InvalidInput, "generator lists differ in length");
  }
  const std::size_t da = commonDegree(a);
  const std::size_t db = commonDegree(b);
  std::vector<Permutation> combined;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Permutation parts[] = {a[i], b[i]};
    combined.push_back(directSum(parts));
  }
  const auto joint = closure(std::move(combined), cap);
  for (const auto& e : joint.elements()) {
    if (fixedPointsIn(e, 0, da) != fixedPointsIn(e, da, da + db)) return false;
  }
  return true;
}

Rational meanFixedPointPower(const PermutationGroup& g, unsigned k) {
  mpz_class sum = 0;
  for (const auto& e : g.elements()) {
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), e.fixedPoints(), k);
    sum += term;
  }
  Rational r(sum, mpz_class(static_cast<unsigned long>(g.order())));
  r.canonicalize();
  return r;
}

}  // namespace drum
