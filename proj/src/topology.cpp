#include "uag/topology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "uag/budget.hpp"
#include "uag/error.hpp"

namespace uag {

// --- Provenance -------------------------------------------------------------

ProvenancePtr Provenance::make_empty() { return std::make_shared<const Provenance>(); }

ProvenancePtr Provenance::make_leaf(std::size_t index) {
  auto p = std::make_shared<Provenance>();
  p->kind = Kind::leaf;
  p->leaf = index;
  return p;
}

namespace {

ProvenancePtr combine(Provenance::Kind kind, ProvenancePtr a, ProvenancePtr b) {
  auto p = std::make_shared<Provenance>();
  p->kind = kind;
  for (auto* side : {&a, &b}) {
    if ((*side)->kind == kind)
      p->children.insert(p->children.end(), (*side)->children.begin(), (*side)->children.end());
    else
      p->children.push_back(*side);
  }
  return p;
}

}  // namespace

ProvenancePtr Provenance::make_union(ProvenancePtr a, ProvenancePtr b) {
  if (a->kind == Kind::empty) return b;
  if (b->kind == Kind::empty) return a;
  return combine(Kind::union_of, std::move(a), std::move(b));
}

ProvenancePtr Provenance::make_intersection(ProvenancePtr a, ProvenancePtr b) {
  return combine(Kind::intersection_of, std::move(a), std::move(b));
}

std::string Provenance::to_string(char leaf_prefix) const {
  switch (kind) {
    case Kind::empty:
      return "empty";
    case Kind::leaf:
      return std::string(1, leaf_prefix) + std::to_string(leaf);
    case Kind::union_of:
    case Kind::intersection_of: {
      const char* sep = kind == Kind::union_of ? " | " : " & ";
      std::string out;
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += sep;
        const auto& c = *children[i];
        const bool wrap = c.kind == Kind::union_of || c.kind == Kind::intersection_of;
        out += wrap ? "(" + c.to_string(leaf_prefix) + ")" : c.to_string(leaf_prefix);
      }
      return out;
    }
  }
  return {};
}

// --- Closed sets ------------------------------------------------------------

RadicalClosedSet::RadicalClosedSet(std::size_t free_size, BitSet pairs, ProvenancePtr provenance)
    : k_(free_size), pairs_(std::move(pairs)), provenance_(std::move(provenance)) {
  if (pairs_.size() != k_ * k_) throw SemanticError("pair matrix does not match the free algebra size");
}

RadicalClosedSet RadicalClosedSet::from_radical(const Congruence& kernel, std::size_t leaf) {
  return RadicalClosedSet(kernel.size(), kernel.pair_matrix(), Provenance::make_leaf(leaf));
}

RadicalClosedSet closed_union(const RadicalClosedSet& a, const RadicalClosedSet& b) {
  if (a.free_size() != b.free_size()) throw SemanticError("closed sets over different free algebras");
  return RadicalClosedSet(a.free_size(), a.pairs() | b.pairs(),
                          Provenance::make_union(a.provenance(), b.provenance()));
}

RadicalClosedSet closed_intersection(const RadicalClosedSet& a, const RadicalClosedSet& b) {
  if (a.free_size() != b.free_size()) throw SemanticError("closed sets over different free algebras");
  return RadicalClosedSet(a.free_size(), a.pairs() & b.pairs(),
                          Provenance::make_intersection(a.provenance(), b.provenance()));
}

bool contains_formula(const FreeAlgebra& f, const RadicalClosedSet& c, const AtomicFormula& phi) {
  if (c.free_size() != f.size()) throw SemanticError("closed set is not over this free algebra");
  return c.contains(f.canonicalize(phi.lhs), f.canonicalize(phi.rhs));
}

// --- Enumeration --------------------------------------------------------------

std::vector<RadicalIdeal> enumerate_radical_ideals(const FreeAlgebra& f) {
  const std::size_t m = f.base().size();
  const std::size_t n = f.vars();
  std::vector<Congruence> point_kernels;
  point_kernels.reserve(f.point_count());
  for (std::size_t p = 0; p < f.point_count(); ++p) point_kernels.push_back(point_kernel(f, p));

  struct Found {
    Congruence kernel;
    PointSet points;
  };
  std::vector<Found> found;
  std::unordered_map<BitSet, std::size_t, BitSetHash> seen;
  auto add = [&](Congruence k, PointSet e) {
    auto key = k.pair_matrix();
    if (seen.contains(key)) return;
    budget::require(found.size() + 1, "radical ideal enumeration");
    seen.emplace(std::move(key), found.size());
    found.push_back({std::move(k), std::move(e)});
  };

  add(Congruence::total(f.size()), PointSet::empty(m, n));
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t p = 0; p < point_kernels.size(); ++p) {
      if (found[i].points.contains(p)) continue;
      auto e = found[i].points;
      e.insert(p);
      add(found[i].kernel.meet(point_kernels[p]), std::move(e));
    }
  }

  std::vector<RadicalIdeal> out;
  out.reserve(found.size());
  for (auto& fd : found) {
    auto canonical = zero_set(f, fd.kernel);
    out.push_back({std::move(fd.kernel), std::move(fd.points), std::move(canonical)});
  }
  std::sort(out.begin(), out.end(), [](const RadicalIdeal& a, const RadicalIdeal& b) {
    return canonical_less(a.kernel.pair_matrix(), b.kernel.pair_matrix());
  });
  return out;
}

namespace {

void sort_canonical(std::vector<RadicalClosedSet>& sets) {
  std::sort(sets.begin(), sets.end(),
            [](const RadicalClosedSet& a, const RadicalClosedSet& b) { return canonical_less(a, b); });
}

}  // namespace

ClosedSetFamily compute_b1_b2(std::span<const RadicalIdeal> radicals) {
  ClosedSetFamily out;
  if (radicals.empty()) return out;

  std::vector<RadicalClosedSet> leaves;
  for (std::size_t i = 0; i < radicals.size(); ++i) leaves.push_back(RadicalClosedSet::from_radical(radicals[i].kernel, i));

  // B1: closure of the radicals under binary union.
  std::unordered_map<BitSet, std::size_t, BitSetHash> seen;
  auto& b1 = out.b1;
  auto add = [&](std::vector<RadicalClosedSet>& into, RadicalClosedSet s) {
    if (seen.contains(s.pairs())) return;
    budget::require(into.size() + 1, "radical-topology closed sets");
    seen.emplace(s.pairs(), into.size());
    into.push_back(std::move(s));
  };
  for (const auto& leaf : leaves) add(b1, leaf);
  for (std::size_t i = 0; i < b1.size(); ++i)
    for (const auto& leaf : leaves) {
      if (leaf.is_subset_of(b1[i])) continue;
      add(b1, closed_union(b1[i], leaf));
    }

  // B2: closure of B1 under binary intersection.
  seen.clear();
  auto& b2 = out.b2;
  for (const auto& s : b1) add(b2, s);
  for (std::size_t i = 0; i < b2.size(); ++i)
    for (std::size_t j = 0; j < b1.size(); ++j) {
      if (b2[i].is_subset_of(b1[j])) continue;
      add(b2, closed_intersection(b2[i], b1[j]));
    }

  sort_canonical(b1);
  sort_canonical(b2);
  out.equal = b1.size() == b2.size() &&
              std::equal(b1.begin(), b1.end(), b2.begin(), [](const auto& a, const auto& b) { return a == b; });
  return out;
}

bool is_irreducible(const RadicalClosedSet& c, std::span<const RadicalClosedSet> universe) {
  if (c.pairs().none()) return false;
  BitSet cover(c.pairs().size());
  for (const auto& d : universe)
    if (d.is_proper_subset_of(c)) cover |= d.pairs();
  return cover != c.pairs();
}

std::vector<RadicalClosedSet> irreducible_components(const RadicalClosedSet& c,
                                                     std::span<const RadicalClosedSet> universe) {
  std::vector<RadicalClosedSet> irreducible;
  for (const auto& d : universe)
    if (d.is_subset_of(c) && is_irreducible(d, universe)) irreducible.push_back(d);

  std::vector<RadicalClosedSet> maximal;
  for (const auto& d : irreducible) {
    const bool dominated = std::any_of(irreducible.begin(), irreducible.end(),
                                       [&](const RadicalClosedSet& e) { return d.is_proper_subset_of(e); });
    if (!dominated) maximal.push_back(d);
  }
  sort_canonical(maximal);

  BitSet together(c.pairs().size());
  for (const auto& d : maximal) together |= d.pairs();
  if (together != c.pairs())
    throw InternalError("decomposition failure: closed set is not the union of its irreducible subsets");
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    BitSet others(c.pairs().size());
    for (std::size_t j = 0; j < maximal.size(); ++j)
      if (j != i) others |= maximal[j].pairs();
    if (maximal[i].pairs().is_subset_of(others))
      throw InternalError("decomposition failure: an irreducible component is redundant");
  }
  return maximal;
}

std::vector<std::size_t> longest_chain(std::span<const BitSet> sets) {
  if (sets.empty()) return {};
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return canonical_less(sets[a], sets[b]); });

  // best[i]: longest chain ending (at the bottom) in sets[order[i]], built
  // from smaller sets; next[i] follows it downwards.
  std::vector<std::size_t> best(order.size(), 1);
  std::vector<std::optional<std::size_t>> below(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (sets[order[j]].is_proper_subset_of(sets[order[i]]) && best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        below[i] = j;
      }

  std::size_t top = 0;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (best[i] > best[top]) top = i;
  std::vector<std::size_t> chain;
  for (std::optional<std::size_t> at = top; at; at = below[*at]) chain.push_back(order[*at]);
  return chain;
}

// --- RadicalTopology ----------------------------------------------------------

RadicalTopology::RadicalTopology(const FreeAlgebra& f)
    : free_(&f), radicals_(enumerate_radical_ideals(f)), family_(compute_b1_b2(radicals_)) {
  for (std::size_t i = 0; i < radicals_.size(); ++i) radical_index_.emplace(radicals_[i].kernel.pair_matrix(), i);
  for (std::size_t i = 0; i < family_.b2.size(); ++i) closed_index_.emplace(family_.b2[i].pairs(), i);
}

RadicalClosedSet RadicalTopology::radical_set(std::size_t i) const {
  return RadicalClosedSet::from_radical(radicals_.at(i).kernel, i);
}

std::optional<std::size_t> RadicalTopology::find_radical(const Congruence& kernel) const {
  const auto it = radical_index_.find(kernel.pair_matrix());
  if (it == radical_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RadicalTopology::find_closed(const BitSet& pairs) const {
  const auto it = closed_index_.find(pairs);
  if (it == closed_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> RadicalTopology::maximal_radicals_in(const RadicalClosedSet& c) const {
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < radicals_.size(); ++i)
    if (radicals_[i].kernel.pair_matrix().is_subset_of(c.pairs())) inside.push_back(i);
  std::vector<std::size_t> out;
  for (const auto i : inside) {
    const auto mi = radicals_[i].kernel.pair_matrix();
    const bool dominated = std::any_of(inside.begin(), inside.end(), [&](std::size_t j) {
      return j != i && mi.is_proper_subset_of(radicals_[j].kernel.pair_matrix());
    });
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> RadicalTopology::longest_radical_chain() const {
  std::vector<BitSet> sets;
  for (const auto& r : radicals_) sets.push_back(r.kernel.pair_matrix());
  return longest_chain(sets);
}

std::vector<std::size_t> RadicalTopology::longest_closed_chain() const {
  std::vector<BitSet> sets;
  for (const auto& c : family_.b2) sets.push_back(c.pairs());
  return longest_chain(sets);
}

std::vector<PointSet> large_decomposition(const RadicalTopology& topology, const PointSet& y) {
  const auto& f = topology.free_algebra();
  if (!is_algebraic(f, y)) throw SemanticError("point set " + format_points(y) + " is not algebraic");
  const auto rad = radical_of_points(f, y);
  const auto at = topology.find_closed(rad.kernel.pair_matrix());
  if (!at) throw InternalError("Rad(Y) missing from the radical-topology closed sets");

  const auto components = irreducible_components(topology.closed_sets()[*at], topology.closed_sets());
  std::vector<PointSet> out;
  auto meet = PointSet::full(f.base().size(), f.vars());
  for (const auto& c : components) {
    // An irreducible closed set is one of the radicals covering it.
    std::optional<std::size_t> which;
    for (std::size_t i = 0; i < topology.radicals().size() && !which; ++i)
      if (topology.radicals()[i].kernel.pair_matrix() == c.pairs()) which = i;
    if (!which) throw InternalError("irreducible closed set that is not a radical ideal");
    const auto& yi = topology.radicals()[*which].canonical_set;
    meet &= yi;
    out.push_back(yi);
  }
  if (meet != y) throw InternalError("large decomposition does not intersect back to Y");
  return out;
}

KonigTrace konig_trace(const RadicalTopology& topology, std::span<const RadicalClosedSet> chain) {
  if (chain.empty()) throw SemanticError("empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i + 1].is_proper_subset_of(chain[i]))
      throw SemanticError("chain is not strictly descending at position " + std::to_string(i + 2));

  std::vector<std::vector<std::size_t>> levels;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    auto rads = topology.maximal_radicals_in(chain[i]);
    BitSet together(chain[i].pairs().size());
    for (const auto r : rads) together |= topology.radicals()[r].kernel.pair_matrix();
    if (together != chain[i].pairs())
      throw SemanticError("chain member " + std::to_string(i + 1) + " is not a finite union of radical ideals");
    levels.push_back(std::move(rads));
  }

  KonigTrace trace;
  std::vector<std::size_t> depth;  // nodes on the path root..node
  for (const auto r : levels[0]) {
    trace.roots.push_back(trace.nodes.size());
    trace.nodes.push_back({r, 0, std::nullopt, {}});
    depth.push_back(1);
  }
  std::vector<std::size_t> frontier = trace.roots;
  for (std::size_t level = 1; level < levels.size(); ++level) {
    std::vector<std::size_t> next;
    for (const auto node : frontier) {
      const auto& v = topology.radicals()[trace.nodes[node].radical].kernel;
      std::vector<std::size_t> seen_values;
      for (const auto r : levels[level]) {
        const auto w = v.meet(topology.radicals()[r].kernel);
        if (w == v) continue;
        const auto idx = topology.find_radical(w);
        if (!idx) throw InternalError("intersection of radical ideals is not a radical ideal");
        if (std::find(seen_values.begin(), seen_values.end(), *idx) != seen_values.end()) continue;
        seen_values.push_back(*idx);
        budget::require(trace.nodes.size() + 1, "Konig trace nodes");
        const std::size_t child = trace.nodes.size();
        trace.nodes.push_back({*idx, level, node, {}});
        trace.nodes[node].children.push_back(child);
        depth.push_back(depth[node] + 1);
        next.push_back(child);
      }
    }
    frontier = std::move(next);
  }

  for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
    trace.max_branching = std::max(trace.max_branching, trace.nodes[i].children.size());
    trace.max_path_length = std::max(trace.max_path_length, depth[i]);
    if (const auto p = trace.nodes[i].parent) {
      const auto& child = topology.radicals()[trace.nodes[i].radical].kernel;
      const auto& parent = topology.radicals()[trace.nodes[*p].radical].kernel;
      if (!(child.is_subset_of(parent) && !(child == parent)))
        throw InternalError("Konig trace edge does not strictly decrease");
    }
  }
  return trace;
}

std::vector<PointSet> algebraic_sets(std::span<const RadicalIdeal> radicals) {
  std::vector<PointSet> out;
  for (const auto& r : radicals) out.push_back(r.canonical_set);
  std::sort(out.begin(), out.end(), [](const PointSet& a, const PointSet& b) { return canonical_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ZariskiClosedSet> enumerate_zariski_closed(std::span<const RadicalIdeal> radicals) {
  if (radicals.empty()) return {};
  const auto leaves = algebraic_sets(radicals);
  const auto& any = leaves.front();

  std::vector<ZariskiClosedSet> sets;
  std::unordered_map<BitSet, std::size_t, BitSetHash> seen;
  auto add = [&](PointSet s, ProvenancePtr p) {
    if (seen.contains(s.bits())) return;
    budget::require(sets.size() + 1, "Zariski closed sets");
    seen.emplace(s.bits(), sets.size());
    sets.push_back({std::move(s), std::move(p)});
  };

  add(PointSet::empty(any.base_size(), any.dim()), Provenance::make_empty());
  for (std::size_t i = 0; i < leaves.size(); ++i) add(leaves[i], Provenance::make_leaf(i));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < leaves.size(); ++j) {
      if (leaves[j].is_subset_of(sets[i].points)) continue;
      add(sets[i].points | leaves[j], Provenance::make_union(sets[i].provenance, Provenance::make_leaf(j)));
    }
  const std::size_t unions = sets.size();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < unions; ++j) {
      if (sets[i].points.is_subset_of(sets[j].points)) continue;
      add(sets[i].points & sets[j].points, Provenance::make_intersection(sets[i].provenance, sets[j].provenance));
    }

  std::sort(sets.begin(), sets.end(),
            [](const ZariskiClosedSet& a, const ZariskiClosedSet& b) { return canonical_less(a.points, b.points); });
  return sets;
}

}  // namespace uag
