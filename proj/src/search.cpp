#include "drum/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "drum/error.hpp"

namespace drum {

namespace {

constexpr PointIndex kNone = static_cast<PointIndex>(-1);

// adjacency[v * r + (c - 1)] = tile glued to v along color c, or kNone.
std::vector<PointIndex> adjacency(const TilingSpec& spec) {
  std::vector<PointIndex> adj(spec.tileCount * spec.colorCount, kNone);
  for (const auto& e : spec.edges) {
    adj[e.i * spec.colorCount + e.color - 1] = e.j;
    adj[e.j * spec.colorCount + e.color - 1] = e.i;
  }
  return adj;
}

std::vector<std::vector<unsigned>> colorPermutations(std::size_t r, bool all) {
  std::vector<unsigned> sigma(r);
  std::iota(sigma.begin(), sigma.end(), 1u);
  std::vector<std::vector<unsigned>> out;
  do {
    out.push_back(sigma);
  } while (all && std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// Breadth-first labeling of the component of `root`, visiting neighbors in
// ascending renamed color. Returns all renamed edges in local labels.
std::vector<GluedEdge> bfsLabeling(const TilingSpec& spec,
                                   const std::vector<PointIndex>& adj,
                                   const std::vector<unsigned>& sigma,
                                   const std::vector<unsigned>& colorOrder,
                                   PointIndex root, std::vector<PointIndex>& label) {
  const std::size_t r = spec.colorCount;
  std::vector<PointIndex> queue{root};
  label[root] = 0;
  std::vector<GluedEdge> edges;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const PointIndex v = queue[head];
    for (unsigned old : colorOrder) {
      const PointIndex w = adj[v * r + old - 1];
      if (w == kNone) continue;
      if (label[w] == kNone) {
        label[w] = static_cast<PointIndex>(queue.size());
        queue.push_back(w);
      }
    }
  }
  // Every edge of the component, including those closing cycles.
  for (PointIndex v : queue) {
    for (unsigned old = 1; old <= r; ++old) {
      const PointIndex w = adj[v * r + old - 1];
      if (w != kNone && label[v] < label[w]) edges.push_back({sigma[old - 1], label[v], label[w]});
    }
  }
  for (PointIndex v : queue) label[v] = kNone;
  std::sort(edges.begin(), edges.end());
  return edges;
}

struct Component {
  std::size_t size = 0;
  std::vector<GluedEdge> edges;  // local labels
};

std::vector<std::vector<PointIndex>> components(const TilingSpec& spec,
                                                const std::vector<PointIndex>& adj) {
  std::vector<bool> seen(spec.tileCount, false);
  std::vector<std::vector<PointIndex>> out;
  for (PointIndex s = 0; s < spec.tileCount; ++s) {
    if (seen[s]) continue;
    std::vector<PointIndex> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::size_t c = 0; c < spec.colorCount; ++c) {
        const PointIndex w = adj[comp[head] * spec.colorCount + c];
        if (w != kNone && !seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

using WordFixes = std::vector<std::size_t>;

// Fixed-point counts of every word in the gluing involutions of length
// 1..maxLength without repeated adjacent letters, in a fixed order.
WordFixes wordFixes(const std::vector<Permutation>& gens, std::size_t maxLength) {
  WordFixes out;
  const auto walk = [&](auto&& self, const Permutation& acc, std::size_t last,
                        std::size_t length) -> void {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (g == last) continue;
      const Permutation next = compose(gens[g], acc);
      out.push_back(next.fixedPoints());
      if (length + 1 < maxLength) self(self, next, g, length + 1);
    }
  };
  walk(walk, Permutation::identity(gens.front().degree()), gens.size(), 0);
  return out;
}

constexpr std::size_t kWordLength = 6;

TilingSpec specFromInvolutions(const std::vector<Permutation>& thetas) {
  TilingSpec spec{thetas.front().degree(), thetas.size(), {}};
  for (std::size_t c = 0; c < thetas.size(); ++c) {
    for (PointIndex i = 0; i < spec.tileCount; ++i) {
      const PointIndex j = thetas[c](i);
      if (i < j) spec.edges.push_back({static_cast<unsigned>(c + 1), i, j});
    }
  }
  return validate(spec);
}

}  // namespace

bool specLess(const TilingSpec& a, const TilingSpec& b) {
  if (a.tileCount != b.tileCount) return a.tileCount < b.tileCount;
  if (a.colorCount != b.colorCount) return a.colorCount < b.colorCount;
  return a.edges < b.edges;
}

TilingSpec recolor(const TilingSpec& spec, const std::vector<unsigned>& sigma) {
  std::vector<unsigned> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t c = 0; c < sorted.size(); ++c) {
    if (sorted.size() != spec.colorCount || sorted[c] != c + 1) {
      fail(ErrorKind::InvalidInput, "color map is not a permutation of 1..r");
    }
  }
  TilingSpec out = spec;
  for (auto& e : out.edges) e.color = sigma[e.color - 1];
  return validate(out);
}

TilingSpec canonicalForm(const TilingSpec& input, bool modColorPermutation) {
  const TilingSpec spec = validate(input);
  const auto adj = adjacency(spec);
  const auto comps = components(spec, adj);
  std::vector<PointIndex> label(spec.tileCount, kNone);
  std::optional<std::vector<GluedEdge>> best;
  for (const auto& sigma : colorPermutations(spec.colorCount, modColorPermutation)) {
    std::vector<unsigned> colorOrder(spec.colorCount);
    for (unsigned old = 1; old <= spec.colorCount; ++old) colorOrder[sigma[old - 1] - 1] = old;
    std::vector<Component> parts;
    for (const auto& comp : comps) {
      Component part{comp.size(), {}};
      bool first = true;
      for (PointIndex root : comp) {
        auto edges = bfsLabeling(spec, adj, sigma, colorOrder, root, label);
        if (first || edges < part.edges) part.edges = std::move(edges);
        first = false;
      }
      parts.push_back(std::move(part));
    }
    std::sort(parts.begin(), parts.end(), [](const Component& a, const Component& b) {
      if (a.size != b.size) return a.size > b.size;
      return a.edges < b.edges;
    });
    std::vector<GluedEdge> edges;
    PointIndex offset = 0;
    for (const auto& part : parts) {
      for (auto e : part.edges) edges.push_back({e.color, e.i + offset, e.j + offset});
      offset += static_cast<PointIndex>(part.size);
    }
    std::sort(edges.begin(), edges.end());
    if (!best || edges < *best) best = std::move(edges);
  }
  return TilingSpec{spec.tileCount, spec.colorCount, std::move(*best)};
}

TreeEnumeration enumerateTreeTilings(const SearchConfig& cfg, bool allowPartial) {
  if (cfg.tileCount == 0 || cfg.tileCount > cfg.maxTileCount) {
    fail(ErrorKind::InvalidInput, "tile count must lie in 1.." +
                                      std::to_string(cfg.maxTileCount));
  }
  if (cfg.colorCount < 3) fail(ErrorKind::InvalidInput, "color count must be at least 3");
  if (cfg.nodeBudget == 0) fail(ErrorKind::InvalidInput, "node budget must be positive");

  TreeEnumeration out;
  std::set<TilingSpec, decltype(&specLess)> found(&specLess);
  const auto spend = [&]() {
    if (out.nodesVisited < cfg.nodeBudget) {
      ++out.nodesVisited;
      return true;
    }
    if (!allowPartial) fail(ErrorKind::BudgetExceeded, "search node budget exhausted");
    out.complete = false;
    return false;
  };
  const auto normalForm = [&](const TilingSpec& s) {
    return cfg.canonicalize ? canonicalForm(s, cfg.modColorPermutation) : s;
  };

  if (cfg.source == InvolutionSource::GroupInvolutions) {
    if (!cfg.group) fail(ErrorKind::InvalidInput, "involution source needs a group");
    const auto& g = *cfg.group;
    if (g.degree() != cfg.tileCount) {
      fail(ErrorKind::InvalidInput, "group degree differs from the tile count");
    }
    std::vector<Permutation> pool;
    for (const auto& x : g.elements()) {
      if (x.isIdentity() || x.isInvolution()) pool.push_back(x);
    }
    std::vector<std::size_t> digit(cfg.colorCount, 0);
    bool more = true;
    while (more && spend()) {
      std::vector<Permutation> thetas;
      for (std::size_t d : digit) thetas.push_back(pool[d]);
      const TilingSpec spec = specFromInvolutions(thetas);
      if (isTree(spec)) found.insert(normalForm(spec));
      more = false;
      for (std::size_t k = digit.size(); k-- > 0;) {
        if (++digit[k] < pool.size()) {
          more = true;
          break;
        }
        digit[k] = 0;
      }
    }
  } else {
    // Grow trees one leaf at a time, keeping one representative per class.
    std::set<TilingSpec, decltype(&specLess)> level(&specLess);
    level.insert(canonicalForm(TilingSpec{1, cfg.colorCount, {}}, cfg.modColorPermutation));
    for (std::size_t n = 1; n < cfg.tileCount && out.complete; ++n) {
      std::set<TilingSpec, decltype(&specLess)> next(&specLess);
      for (const auto& spec : level) {
        const auto adj = adjacency(spec);
        for (PointIndex v = 0; v < n && out.complete; ++v) {
          for (unsigned c = 1; c <= cfg.colorCount; ++c) {
            if (adj[v * cfg.colorCount + c - 1] != kNone) continue;
            if (!spend()) break;
            TilingSpec child{n + 1, cfg.colorCount, spec.edges};
            child.edges.push_back({c, v, static_cast<PointIndex>(n)});
            next.insert(canonicalForm(child, cfg.modColorPermutation));
          }
        }
      }
      level = std::move(next);
    }
    if (cfg.canonicalize) {
      found = std::move(level);
    } else {
      // Every labeled spec in each class.
      std::vector<PointIndex> perm(cfg.tileCount);
      for (const auto& spec : level) {
        std::iota(perm.begin(), perm.end(), PointIndex{0});
        do {
          if (!spend()) break;
          TilingSpec relabeled = spec;
          for (auto& e : relabeled.edges) {
            e.i = perm[e.i];
            e.j = perm[e.j];
          }
          for (const auto& sigma :
               colorPermutations(cfg.colorCount, cfg.modColorPermutation)) {
            found.insert(recolor(relabeled, sigma));
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!out.complete) break;
      }
    }
  }
  out.specs.assign(found.begin(), found.end());
  return out;
}

PairCatalog buildPairCatalog(const std::vector<TilingSpec>& specs,
                             bool modColorPermutation,
                             const InvertibleSearchOptions& options) {
  PairCatalog catalog;
  if (specs.empty()) return catalog;
  for (const auto& s : specs) {
    if (s.tileCount != specs.front().tileCount || s.colorCount != specs.front().colorCount) {
      fail(ErrorKind::InvalidInput, "catalog specs must share tile and color counts");
    }
  }
  // Transplantable specs agree on the fixed-point count of every word, so
  // the sorted multiset of word traces buckets the candidates.
  std::vector<WordFixes> fixes;
  std::map<WordFixes, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    fixes.push_back(wordFixes(involutions(specs[i]), kWordLength));
    WordFixes key = fixes.back();
    std::sort(key.begin(), key.end());
    buckets[key].push_back(i);
  }
  const auto sigmas = colorPermutations(specs.front().colorCount, modColorPermutation);
  for (const auto& [key, members] : buckets) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x; y < members.size(); ++y) {
        const auto& a = specs[members[x]];
        const auto& b = specs[members[y]];
        for (const auto& sigma : sigmas) {
          const bool identity = std::is_sorted(sigma.begin(), sigma.end());
          if (x == y && identity) continue;
          ++catalog.pairsExamined;
          const TilingSpec recolored = identity ? b : recolor(b, sigma);
          if (wordFixes(involutions(recolored), kWordLength) != fixes[members[x]]) continue;
          ++catalog.pairsClassified;
          auto result = classify(a, recolored, options);
          if (result.verdict != Verdict::TransplantableNoncongruent) continue;
          const auto group = operatorGroup(a);
          catalog.entries.push_back(
              {a, b, sigma, std::move(result), group.order(), isTwoTransitive(group)});
          break;
        }
      }
    }
  }
  std::sort(catalog.entries.begin(), catalog.entries.end(),
            [](const CatalogEntry& p, const CatalogEntry& q) {
              if (!(p.specA == q.specA)) return specLess(p.specA, q.specA);
              return specLess(p.specB, q.specB);
            });
  return catalog;
}

GassmannSearch gassmannPairsFromGroup(const PermutationGroup& g, std::size_t indexN,
                                      std::size_t closureBudget) {
  if (indexN == 0 || g.order() % indexN != 0) {
    fail(ErrorKind::InvalidInput, "index must divide the group order");
  }
  GassmannSearch out;
  const auto all = g.elements();
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::pair<std::vector<Permutation>, Subgroup>> lattice;
  const Subgroup trivial = subgroupGeneratedBy(g, {});
  seen.insert(trivial.indices());
  lattice.emplace_back(std::vector<Permutation>{}, trivial);
  std::size_t spent = 0;
  for (std::size_t head = 0; head < lattice.size() && out.complete; ++head) {
    for (std::size_t x = 0; x < all.size(); ++x) {
      if (lattice[head].second.containsIndex(x)) continue;
      if (++spent > closureBudget) {
        out.complete = false;
        break;
      }
      auto gens = lattice[head].first;
      gens.push_back(all[x]);
      Subgroup joined = subgroupGeneratedBy(g, gens);
      if (seen.insert(joined.indices()).second) {
        lattice.emplace_back(std::move(gens), std::move(joined));
      }
    }
  }
  out.subgroupsFound = lattice.size();

  const std::size_t target = g.order() / indexN;
  std::vector<Subgroup> reps;  // one per conjugacy class of target order
  for (const auto& [gens, h] : lattice) {
    if (h.order() != target) continue;
    const bool known = std::any_of(reps.begin(), reps.end(), [&](const Subgroup& r) {
      return conjugatingElement(g, r, h).has_value();
    });
    if (!known) reps.push_back(h);
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      auto triple = almostConjugate(g, reps[i], reps[j]);
      if (triple.isGassmannPair()) out.triples.push_back(std::move(triple));
    }
  }
  return out;
}

}  // namespace drum
