#include "uag/products.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "uag/budget.hpp"
#include "uag/error.hpp"
#include "uag/free_algebra.hpp"

namespace uag {

namespace {

std::uint32_t full_mask(std::size_t k) { return static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1); }

void check_index(std::size_t k) {
  if (k == 0) reject_nonprincipal("an empty index set");
  if (k > FilterOnFiniteSet::kMaxIndex)
    throw BudgetError("index sets above " + std::to_string(FilterOnFiniteSet::kMaxIndex) + " elements are not supported");
}

}  // namespace

void reject_nonprincipal(const std::string& what) {
  throw SemanticError(what +
                      " is outside desk scale: only finite index sets are supported, and every filter on a finite "
                      "set is principal");
}

FilterOnFiniteSet FilterOnFiniteSet::principal(std::size_t index_size, std::uint32_t generator) {
  check_index(index_size);
  const auto all = full_mask(index_size);
  if (generator == 0 || (generator & ~all) != 0) throw SemanticError("filter generator must be a nonempty subset of I");
  std::vector<std::uint32_t> members;
  for (std::uint32_t s = 0; s <= all; ++s)
    if ((s & generator) == generator) members.push_back(s);
  return FilterOnFiniteSet(index_size, std::move(members));
}

FilterOnFiniteSet FilterOnFiniteSet::principal_at(std::size_t index_size, std::size_t i) {
  if (i >= index_size) throw SemanticError("principal point " + std::to_string(i) + " outside I");
  return principal(index_size, std::uint32_t{1} << i);
}

FilterOnFiniteSet FilterOnFiniteSet::from_members(std::size_t index_size, std::vector<std::uint32_t> members) {
  check_index(index_size);
  const auto all = full_mask(index_size);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) throw SemanticError("a filter is nonempty");
  const std::set<std::uint32_t> in(members.begin(), members.end());
  for (const auto s : members) {
    if (s == 0) throw SemanticError("a filter excludes the empty set");
    if ((s & ~all) != 0) throw SemanticError("filter member outside I");
    for (std::size_t i = 0; i < index_size; ++i)
      if (!in.contains(s | (std::uint32_t{1} << i))) throw SemanticError("filter is not upward closed");
    for (const auto t : members)
      if (!in.contains(s & t)) throw SemanticError("filter is not closed under intersection");
  }
  return FilterOnFiniteSet(index_size, std::move(members));
}

bool FilterOnFiniteSet::contains(std::uint32_t subset) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), subset);
}

std::uint32_t FilterOnFiniteSet::generator() const noexcept {
  auto g = full_mask(k_);
  for (const auto s : members_) g &= s;
  return g;
}

bool FilterOnFiniteSet::is_ultrafilter() const noexcept {
  const auto all = full_mask(k_);
  for (std::uint32_t s = 0; s <= all; ++s)
    if (contains(s) == contains(all & ~s)) return false;
  return true;
}

std::vector<FilterOnFiniteSet> FilterOnFiniteSet::all_ultrafilters(std::size_t index_size) {
  check_index(index_size);
  // Enumerate every filter by generator and keep the ultra ones; on a finite
  // set this recovers exactly the principal ultrafilters.
  std::vector<FilterOnFiniteSet> out;
  for (std::uint32_t g = 1; g <= full_mask(index_size); ++g) {
    auto f = principal(index_size, g);
    if (f.is_ultrafilter()) out.push_back(std::move(f));
  }
  return out;
}

ReducedProduct reduced_product(const FiniteAlgebra& a, const FilterOnFiniteSet& filter) {
  const std::size_t k = filter.index_size();
  const auto power = power_algebra(a, k);
  const std::size_t m = a.size();
  const std::size_t n = power.size();
  budget::require(n * n, "reduced product equivalence");

  std::vector<std::vector<Element>> tuples(n);
  for (std::size_t x = 0; x < n; ++x) tuples[x] = decode_tuple(m, k, x);
  auto agree = [&](std::size_t x, std::size_t y) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (tuples[x][i] == tuples[y][i]) mask |= std::uint32_t{1} << i;
    return filter.contains(mask);
  };

  std::vector<Element> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    labels[x] = static_cast<Element>(x);
    for (std::size_t y = 0; y < x; ++y)
      if (agree(x, y)) {
        labels[x] = labels[y];
        break;
      }
  }
  const Congruence theta(labels);
  if (!is_compatible(power, theta)) throw InternalError("filter equivalence is not a congruence on A^I");
  auto q = quotient_algebra(power, theta);
  q.algebra.set_name(a.name().empty() ? std::string("A^I/F") : a.name() + "^I/F");
  return {std::move(q.algebra), std::move(q.projection)};
}

TopologyComparison verify_radical_topology_equal(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t vars) {
  if (!(a.signature() == b.signature()))
    throw SemanticError("refused: the algebras have different signatures");
  const auto iso = find_isomorphism(a, b);
  if (!iso)
    throw SemanticError(
        "refused: the algebras are not isomorphic, so (being finite) they are not elementarily equivalent");

  TopologyComparison out;
  out.isomorphism = *iso;
  out.note = "elementary equivalence checked as isomorphism (valid for finite structures)";

  const FreeAlgebra fa(a, vars);
  const FreeAlgebra fb(b, vars);
  bool ok = fa.size() == fb.size();

  // Same term, two algebras: element i of F(A) is the class of witness_i.
  std::vector<Element> to_b(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) to_b[i] = static_cast<Element>(fb.canonicalize(fa.witness(i)));
  ok = ok && HomMap{to_b}.is_bijective(fb.size());
  if (!ok) return out;

  auto translate = [&](const Congruence& ka) {
    std::vector<Element> labels(fb.size());
    for (std::size_t i = 0; i < fa.size(); ++i) labels[to_b[i]] = to_b[ka.representative(static_cast<Element>(i))];
    return Congruence(labels);
  };

  // Rad_A(p≈q) versus Rad_B(p≈q), one formula class at a time.
  for (Element p = 0; p < fa.size(); ++p)
    for (Element q = p; q < fa.size(); ++q) {
      const ElementPair pa{p, q};
      const ElementPair pb{to_b[p], to_b[q]};
      const auto ka = point_kernel(fa, solution_set(fa, std::span(&pa, 1)));
      const auto kb = point_kernel(fb, solution_set(fb, std::span(&pb, 1)));
      ok = ok && translate(ka) == kb;
      ++out.equations_checked;
    }

  const auto rad_a = enumerate_radical_ideals(fa);
  const auto rad_b = enumerate_radical_ideals(fb);
  out.radicals_a = rad_a.size();
  out.radicals_b = rad_b.size();
  ok = ok && rad_a.size() == rad_b.size();
  std::vector<bool> used(rad_b.size(), false);
  for (const auto& r : rad_a) {
    const auto kb = translate(r.kernel);
    std::size_t hit = rad_b.size();
    for (std::size_t j = 0; j < rad_b.size(); ++j)
      if (rad_b[j].kernel == kb) hit = j;
    if (hit == rad_b.size() || used[hit]) {
      ok = false;
      out.matching.push_back(rad_b.size());
      continue;
    }
    used[hit] = true;
    out.matching.push_back(hit);
    // The isomorphism carries V_A(R) onto V_B(R) coordinatewise.
    auto image = PointSet::empty(b.size(), vars);
    for (const auto code : r.canonical_set.codes()) {
      auto pt = r.canonical_set.point(code);
      for (auto& e : pt) e = (*iso)(e);
      image.insert(pt);
    }
    ok = ok && image == rad_b[hit].canonical_set;
  }
  out.equal = ok;
  return out;
}

PreservationReport verify_preservation(const FiniteAlgebra& a, std::size_t vars, const CheckOptions& options) {
  PreservationReport report;
  auto record = [&](std::string kind, std::string label, const FiniteAlgebra& alg) {
    const auto cert = certify_artinian(alg, vars, options);
    PreservationEntry e;
    e.kind = std::move(kind);
    e.label = std::move(label);
    e.size = alg.size();
    e.certified = cert.verdict;
    for (const auto& w : cert.condition("ii").witness)
      if (w.first == "max_descending_chain") e.descending_radical = static_cast<std::size_t>(w.second);
    for (const auto& w : cert.condition("iii").witness)
      if (w.first == "max_ascending_chain") e.ascending_algebraic = static_cast<std::size_t>(w.second);
    report.entries.push_back(std::move(e));
  };

  // Subalgebras, one per distinct subuniverse generated by a seed set.
  const std::size_t m = a.size();
  std::set<std::vector<Element>> universes;
  if (m < 63 && (std::size_t{1} << m) <= budget::limit()) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<Element> seed;
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1u) seed.push_back(static_cast<Element>(i));
      universes.insert(subalgebra_closure(a, seed));
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      const Element e = static_cast<Element>(i);
      universes.insert(subalgebra_closure(a, std::span(&e, 1)));
    }
    universes.insert(subalgebra_closure(a, {}));
  }
  for (const auto& u : universes) {
    if (u.empty()) continue;
    std::string label = "{";
    for (std::size_t i = 0; i < u.size(); ++i) label += (i ? "," : "") + std::to_string(u[i]);
    record("subalgebra", label + "}", induced_subalgebra(a, u));
  }

  const FreeAlgebra f(a, vars);
  for (const auto& y : algebraic_sets(enumerate_radical_ideals(f))) {
    if (y.empty()) continue;
    record("coordinate", "Gamma(" + format_points(y) + ")", coordinate_algebra(f, y).gamma);
  }

  for (const auto& u : FilterOnFiniteSet::all_ultrafilters(2))
    record("ultrapower", "I=2, principal at " + std::to_string(std::countr_zero(u.generator())),
           reduced_product(a, u).algebra);

  report.all_certified = std::all_of(report.entries.begin(), report.entries.end(),
                                     [](const PreservationEntry& e) { return e.certified; });
  return report;
}

}  // namespace uag
