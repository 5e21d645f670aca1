#include "uag/chains.hpp"

#include <algorithm>
#include <random>

#include "uag/budget.hpp"
#include "uag/error.hpp"

namespace uag {

bool for_each_point_subset(std::size_t base_size, std::size_t dim, const CheckOptions& options,
                           const std::function<void(const PointSet&)>& visit) {
  const std::size_t universe = budget::require_pow(base_size, dim, "point space A^n");
  const bool exhaustive = universe < 63 && (std::size_t{1} << universe) <= budget::limit();
  if (exhaustive) {
    const std::size_t total = std::size_t{1} << universe;
    for (std::size_t mask = 0; mask < total; ++mask) {
      auto s = PointSet::empty(base_size, dim);
      for (std::size_t p = 0; p < universe; ++p)
        if ((mask >> p) & 1u) s.insert(p);
      visit(s);
    }
    return true;
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t k = 0; k < options.samples; ++k) {
    auto s = PointSet::empty(base_size, dim);
    std::uint64_t word = 0;
    for (std::size_t p = 0; p < universe; ++p) {
      if (p % 64 == 0) word = rng();
      if ((word >> (p % 64)) & 1u) s.insert(p);
    }
    visit(s);
  }
  return false;
}

namespace {

// Kept positions of a greedy + prune pass over per-formula solution sets.
std::vector<std::size_t> select_irredundant(std::span<const PointSet> solutions, const PointSet& full) {
  auto running = full;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    auto next = running & solutions[i];
    if (next != running) {
      kept.push_back(i);
      running = std::move(next);
    }
  }
  const auto& target = running;
  for (std::size_t pos = 0; pos < kept.size();) {
    auto without = full;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != pos) without &= solutions[kept[j]];
    if (without == target)
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    else
      ++pos;
  }
  return kept;
}

}  // namespace

EquationSystem finite_subsystem(const FiniteAlgebra& a, const EquationSystem& s) {
  std::vector<PointSet> solutions;
  solutions.reserve(s.size());
  for (const auto& phi : s.formulas()) {
    EquationSystem single(s.vars());
    single.add(phi);
    solutions.push_back(solution_set(a, single));
  }
  const auto kept = select_irredundant(solutions, PointSet::full(a.size(), s.vars()));
  EquationSystem out(s.vars());
  for (const auto i : kept) out.add(s[i]);
  return out;
}

std::vector<std::size_t> finite_subsystem(const FreeAlgebra& f, std::span<const ElementPair> pairs) {
  std::vector<PointSet> solutions;
  solutions.reserve(pairs.size());
  for (const auto& p : pairs) solutions.push_back(solution_set(f, std::span<const ElementPair>(&p, 1)));
  return select_irredundant(solutions, PointSet::full(f.base().size(), f.vars()));
}

PointSet finite_support(const FreeAlgebra& f, const PointSet& e) {
  const auto codes = e.codes();
  std::vector<Congruence> kernels;
  kernels.reserve(codes.size());
  for (const auto c : codes) kernels.push_back(point_kernel(f, c));

  auto running = Congruence::total(f.size());
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    auto next = running.meet(kernels[i]);
    if (!(next == running)) {
      kept.push_back(i);
      running = std::move(next);
    }
  }
  const auto target = running;
  for (std::size_t pos = 0; pos < kept.size();) {
    auto without = Congruence::total(f.size());
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != pos) without = without.meet(kernels[kept[j]]);
    if (without == target)
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    else
      ++pos;
  }

  auto out = PointSet::empty(e.base_size(), e.dim());
  for (const auto i : kept) out.insert(codes[i]);
  return out;
}

ChainLengths max_chain_lengths(const RadicalTopology& topology) {
  std::vector<BitSet> algebraic;
  for (const auto& y : algebraic_sets(topology.radicals())) algebraic.push_back(y.bits());
  return {longest_chain(algebraic).size(), topology.radical_height()};
}

std::vector<std::size_t> compactness_subcover(const FreeAlgebra& f, const PointSet& e, const BitSet& s) {
  const std::size_t k = f.size();
  if (s.size() != k * k) throw SemanticError("formula set is not over this free algebra");
  const auto codes = e.codes();
  const auto covered_by = [&](std::span<const std::size_t> positions) {
    BitSet cover(k * k);
    for (const auto i : positions) cover |= point_kernel(f, codes[i]).pair_matrix().complement();
    return cover;
  };
  std::vector<std::size_t> all(codes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!s.is_subset_of(covered_by(all))) throw SemanticError("the point-kernel complements do not cover the formula set");

  // Rad(E0) = Rad(E) means the complements of E0's kernels already cover
  // At \ Rad(E) and hence s; then drop points s does not need.
  const auto support = finite_support(f, e);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < codes.size(); ++i)
    if (support.contains(codes[i])) chosen.push_back(i);
  for (std::size_t pos = 0; pos < chosen.size();) {
    auto without = chosen;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(pos));
    if (s.is_subset_of(covered_by(without)))
      chosen = std::move(without);
    else
      ++pos;
  }
  if (!s.is_subset_of(covered_by(chosen))) throw InternalError("compactness subcover does not cover the formula set");
  return chosen;
}

std::vector<std::size_t> contra_compact_subcover(const PointSet& y, std::span<const PointSet> cover) {
  for (const auto& c : cover)
    if (c.base_size() != y.base_size() || c.dim() != y.dim())
      throw SemanticError("cover member lives in a different space");
  auto uncovered = y;
  std::vector<std::size_t> chosen;
  while (!uncovered.empty()) {
    std::size_t best = cover.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      const auto gain = (uncovered & cover[i]).count();
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == cover.size()) throw SemanticError("cover does not cover the point set");
    chosen.push_back(best);
    auto remaining = uncovered;
    for (const auto code : (uncovered & cover[best]).codes()) remaining.erase(code);
    uncovered = std::move(remaining);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::string to_string(ChainKind kind) { return kind == ChainKind::artinian ? "artinian" : "noetherian"; }

const ConditionResult& ChainCertificate::condition(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return c;
  throw SemanticError("certificate has no condition '" + id + "'");
}

namespace {

using Witness = std::vector<std::pair<std::string, std::int64_t>>;

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

// Antitone bijection between radicals and their algebraic sets.
bool duality_holds(std::span<const RadicalIdeal> radicals) {
  for (std::size_t i = 0; i < radicals.size(); ++i)
    for (std::size_t j = 0; j < radicals.size(); ++j) {
      const bool rad = radicals[i].kernel.is_subset_of(radicals[j].kernel);
      const bool pts = radicals[j].canonical_set.is_subset_of(radicals[i].canonical_set);
      if (rad != pts) return false;
      if (i != j && radicals[i].canonical_set == radicals[j].canonical_set) return false;
    }
  return true;
}

}  // namespace

ChainCertificate certify_artinian(const FiniteAlgebra& a, std::size_t vars, const CheckOptions& options) {
  const FreeAlgebra f(a, vars);
  const RadicalTopology topology(f);
  const auto lengths = max_chain_lengths(topology);
  const auto zariski = algebraic_sets(topology.radicals());

  ChainCertificate cert;
  cert.kind = ChainKind::artinian;
  cert.vars = vars;
  cert.seed = options.seed;

  // (i) and (v) share the subset walk.
  bool support_ok = true, compact_ok = true, contra_ok = true;
  std::size_t subsets = 0, max_support = 0, max_subcover = 0, max_contra = 0, max_cover_family = 0;
  cert.exhaustive = for_each_point_subset(a.size(), vars, options, [&](const PointSet& e) {
    ++subsets;
    const auto e0 = finite_support(f, e);
    const auto rad = point_kernel(f, e);
    support_ok = support_ok && e0.is_subset_of(e) && point_kernel(f, e0) == rad &&
                 e0.count() < std::max<std::size_t>(lengths.descending_radical, 1);
    max_support = std::max(max_support, e0.count());

    const auto outside = rad.pair_matrix().complement();
    const auto sub = compactness_subcover(f, e, outside);
    compact_ok = compact_ok && sub.size() <= e0.count();
    max_subcover = std::max(max_subcover, sub.size());

    // Cover e by the closures of its points plus every algebraic set.
    std::vector<PointSet> cover;
    for (const auto code : e.codes())
      cover.push_back(algebraic_closure(f, PointSet::from_codes(a.size(), vars, std::span(&code, 1))));
    cover.insert(cover.end(), zariski.begin(), zariski.end());
    const auto pick = contra_compact_subcover(e, cover);
    auto got = PointSet::empty(a.size(), vars);
    for (const auto i : pick) got |= cover[i];
    contra_ok = contra_ok && e.is_subset_of(got);
    max_contra = std::max(max_contra, pick.size());
    max_cover_family = std::max(max_cover_family, cover.size());
  });

  cert.conditions.push_back({"i",
                             "every E has a finite E0 with Rad(E0) = Rad(E)",
                             support_ok,
                             Witness{{"subsets_checked", as_int(subsets)}, {"max_support_size", as_int(max_support)}}});
  cert.conditions.push_back({"ii",
                             "descending chains of radical ideals terminate",
                             lengths.descending_radical >= 1,
                             Witness{{"radical_ideals", as_int(topology.radicals().size())},
                                     {"max_descending_chain", as_int(lengths.descending_radical)}}});
  cert.conditions.push_back({"iii",
                             "ascending chains of algebraic sets terminate",
                             lengths.ascending_algebraic >= 1,
                             Witness{{"algebraic_sets", as_int(zariski.size())},
                                     {"max_ascending_chain", as_int(lengths.ascending_algebraic)}}});
  cert.conditions.push_back({"iv",
                             "the radical topology is noetherian (B2 = B1, finite)",
                             topology.family().equal,
                             Witness{{"b1_size", as_int(topology.family().b1.size())},
                                     {"b2_size", as_int(topology.family().b2.size())},
                                     {"max_descending_closed_chain", as_int(topology.closed_height())}}});
  cert.conditions.push_back({"v",
                             "every set of atomic formulas is compact",
                             compact_ok,
                             Witness{{"subsets_checked", as_int(subsets)}, {"max_subcover_size", as_int(max_subcover)}}});
  cert.conditions.push_back({"vi",
                             "every subset of A^n is contra-compact",
                             contra_ok,
                             Witness{{"subsets_checked", as_int(subsets)},
                                     {"max_cover_family", as_int(max_cover_family)},
                                     {"max_subcover_size", as_int(max_contra)}}});

  cert.consistent = lengths.descending_radical == lengths.ascending_algebraic && duality_holds(topology.radicals()) &&
                    max_subcover <= max_support;
  cert.verdict = cert.consistent && std::all_of(cert.conditions.begin(), cert.conditions.end(),
                                                [](const ConditionResult& c) { return c.satisfied; });
  return cert;
}

ChainCertificate certify_noetherian(const FiniteAlgebra& a, std::size_t vars, const CheckOptions& options) {
  const FreeAlgebra f(a, vars);
  const RadicalTopology topology(f);
  const auto zariski = enumerate_zariski_closed(topology.radicals());
  const auto algebraic = algebraic_sets(topology.radicals());

  ChainCertificate cert;
  cert.kind = ChainKind::noetherian;
  cert.vars = vars;
  cert.seed = options.seed;
  cert.exhaustive = false;

  std::mt19937_64 rng(options.seed);
  const std::size_t k = f.size();
  bool sub_ok = true, ideal_ok = true;
  std::size_t max_sub = 0, max_ideal_sub = 0;
  for (std::size_t t = 0; t < options.samples; ++t) {
    const std::size_t len = static_cast<std::size_t>(rng() % (2 * k + 1));
    EquationSystem s(vars);
    for (std::size_t j = 0; j < len; ++j) {
      const auto p = static_cast<std::size_t>(rng() % k);
      const auto q = static_cast<std::size_t>(rng() % k);
      s.add({f.witness(p), f.witness(q)});
    }
    const auto target = solution_set(a, s);
    const auto s0 = finite_subsystem(a, s);
    sub_ok = sub_ok && solution_set(a, s0) == target &&
             s0.size() <= f.point_count() - target.count();
    max_sub = std::max(max_sub, s0.size());

    // S0 drawn from [S]: list the ideal as formula classes (f,g), f < g.
    const auto ideal = ideal_generated(f, s);
    std::vector<ElementPair> ideal_pairs;
    for (Element x = 0; x < k; ++x)
      for (Element y = x + 1; y < k; ++y)
        if (ideal.related(x, y)) ideal_pairs.emplace_back(x, y);
    const auto kept = finite_subsystem(f, ideal_pairs);
    std::vector<ElementPair> chosen;
    for (const auto i : kept) chosen.push_back(ideal_pairs[i]);
    ideal_ok = ideal_ok && solution_set(f, chosen) == target;
    max_ideal_sub = std::max(max_ideal_sub, chosen.size());
  }

  std::vector<BitSet> closed_bits;
  for (const auto& z : zariski) closed_bits.push_back(z.points.bits());
  const auto closed_chain = longest_chain(closed_bits);

  // Longest chain of algebraic sets Y1 ⊋ Y2 ⊋ ... gives epimorphisms
  // Gamma(Y1) -> Gamma(Y2) -> ...; build and check each one.
  std::vector<BitSet> alg_bits;
  for (const auto& y : algebraic) alg_bits.push_back(y.bits());
  const auto alg_chain = longest_chain(alg_bits);
  bool epi_ok = true;
  std::size_t epis = 0;
  for (std::size_t i = 0; i + 1 < alg_chain.size(); ++i) {
    const auto& y1 = algebraic[alg_chain[i]];
    const auto& y2 = algebraic[alg_chain[i + 1]];
    if (y2.empty()) continue;  // Gamma of the empty set is not formed
    const auto k1 = point_kernel(f, y1);
    const auto k2 = point_kernel(f, y2);
    const auto g1 = quotient_algebra(f.algebra(), k1);
    const auto g2 = quotient_algebra(f.algebra(), k2);
    HomMap epi;
    const auto classes = k1.classes();
    for (const auto& cls : classes) epi.map.push_back(g2.projection(cls.front()));
    std::vector<bool> hit(g2.algebra.size(), false);
    for (const auto v : epi.map) hit[v] = true;
    const bool onto = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    epi_ok = epi_ok && k1.is_subset_of(k2) && onto && is_homomorphism(g1.algebra, g2.algebra, epi);
    ++epis;
  }

  cert.conditions.push_back({"i",
                             "every system has a finite equivalent subsystem",
                             sub_ok,
                             Witness{{"systems_checked", as_int(options.samples)}, {"max_subsystem_size", as_int(max_sub)}}});
  cert.conditions.push_back({"ii",
                             "every system has a finite S0 within [S] with V(S0) = V(S)",
                             ideal_ok,
                             Witness{{"systems_checked", as_int(options.samples)},
                                     {"max_subsystem_size", as_int(max_ideal_sub)}}});
  cert.conditions.push_back({"iii",
                             "the Zariski topology on A^n is noetherian",
                             !closed_chain.empty(),
                             Witness{{"closed_sets", as_int(zariski.size())},
                                     {"max_descending_chain", as_int(closed_chain.size())}}});
  cert.conditions.push_back({"iv",
                             "chains of coordinate algebras and epimorphisms terminate",
                             epi_ok,
                             Witness{{"max_chain", as_int(alg_chain.size())}, {"epimorphisms_checked", as_int(epis)}}});

  cert.consistent = closed_chain.size() >= alg_chain.size();
  cert.verdict = cert.consistent && std::all_of(cert.conditions.begin(), cert.conditions.end(),
                                                [](const ConditionResult& c) { return c.satisfied; });
  return cert;
}

}  // namespace uag
