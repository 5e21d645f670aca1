#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <uag/corpus.hpp>
#include <uag/error.hpp>
#include <uag/topology.hpp>

#include "support.hpp"

using namespace uag;

namespace {

struct Case {
  oracle::Algebra ref;
  int n;
};

std::vector<Case> cases() {
  std::vector<Case> out;
  for (const auto& ref : oracle::corpus())
    for (int n = 1; n <= 2; ++n) out.push_back({ref, n});
  return out;
}

}  // namespace

TEST_CASE("radical ideals and algebraic sets match the oracle") {
  for (const auto& [ref, n] : cases()) {
    CAPTURE(ref.name);
    CAPTURE(n);
    const auto a = support::to_library(ref);
    const FreeAlgebra f(a, static_cast<std::size_t>(n));
    const RadicalTopology t(f);
    const auto expect = oracle::algebraic_sets(ref, n);
    std::set<oracle::Points> got;
    for (const auto& y : algebraic_sets(t.radicals())) got.insert(support::to_points(y));
    CHECK(got == expect);
    CHECK(t.radicals().size() == expect.size());
    CHECK(t.radicals().front().kernel.is_identity());
    CHECK(t.radicals().back().kernel.is_total());
    for (const auto& r : t.radicals()) CHECK(zero_set(f, r.kernel) == r.canonical_set);
  }
}

TEST_CASE("Zariski closed sets match the oracle") {
  for (const auto& [ref, n] : cases()) {
    CAPTURE(ref.name);
    CAPTURE(n);
    const FreeAlgebra f(support::to_library(ref), static_cast<std::size_t>(n));
    const RadicalTopology t(f);
    std::set<oracle::Points> got;
    const auto closed = enumerate_zariski_closed(t.radicals());
    for (const auto& z : closed) got.insert(support::to_points(z.points));
    CHECK(got.size() == closed.size());
    CHECK(got == oracle::zariski_closed(ref, n));
    CHECK(closed.front().points.empty());
  }
}

TEST_CASE("Z2 at n = 1 has exactly three Zariski closed sets") {
  const FreeAlgebra f(corpus::cyclic_group(2), 1);
  const RadicalTopology t(f);
  std::vector<std::string> got;
  for (const auto& z : enumerate_zariski_closed(t.radicals())) got.push_back(format_points(z.points));
  CHECK(got == std::vector<std::string>{"{}", "{(0)}", "{(0),(1)}"});
}

TEST_CASE("B2 equals B1 and B1 is union closed") {
  for (const auto& [ref, n] : cases()) {
    CAPTURE(ref.name);
    const FreeAlgebra f(support::to_library(ref), static_cast<std::size_t>(n));
    const RadicalTopology t(f);
    const auto& fam = t.family();
    CHECK(fam.equal);
    REQUIRE(fam.b1.size() == fam.b2.size());
    for (std::size_t i = 0; i < fam.b1.size(); ++i) CHECK(fam.b1[i] == fam.b2[i]);
    for (const auto& x : fam.b1)
      for (const auto& y : fam.b1) {
        CHECK(t.find_closed(closed_union(x, y).pairs()).has_value());
        CHECK(t.find_closed(closed_intersection(x, y).pairs()).has_value());
      }
    for (std::size_t i = 1; i < fam.b2.size(); ++i) CHECK(canonical_less(fam.b2[i - 1], fam.b2[i]));
  }
}

TEST_CASE("irreducible components recompose and are irredundant") {
  std::size_t reducible_radicals = 0;
  for (const auto& [ref, n] : cases()) {
    CAPTURE(ref.name);
    const FreeAlgebra f(support::to_library(ref), static_cast<std::size_t>(n));
    const RadicalTopology t(f);
    for (const auto& c : t.closed_sets()) {
      const auto comps = irreducible_components(c, t.closed_sets());
      REQUIRE_FALSE(comps.empty());
      auto u = comps.front();
      for (const auto& d : comps) {
        CHECK(is_irreducible(d, t.closed_sets()));
        CHECK(d.is_subset_of(c));
        u = closed_union(u, d);
        // Irreducible closed sets are radicals.
        bool is_radical = false;
        for (std::size_t r = 0; r < t.radicals().size(); ++r) is_radical = is_radical || t.radical_set(r) == d;
        CHECK(is_radical);
      }
      CHECK(u == c);
      for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = 0; j < comps.size(); ++j)
          if (i != j) CHECK_FALSE(comps[i].is_subset_of(comps[j]));
    }
    for (std::size_t r = 0; r < t.radicals().size(); ++r)
      if (!is_irreducible(t.radical_set(r), t.closed_sets())) ++reducible_radicals;
  }
  // Z2 at n = 2: the total relation is the union of the three proper radicals.
  CHECK(reducible_radicals > 0);
}

TEST_CASE("large decomposition recomposes by intersection") {
  for (const auto& [ref, n] : cases()) {
    CAPTURE(ref.name);
    const FreeAlgebra f(support::to_library(ref), static_cast<std::size_t>(n));
    const RadicalTopology t(f);
    const auto alg = algebraic_sets(t.radicals());
    for (const auto& y : alg) {
      const auto parts = large_decomposition(t, y);
      REQUIRE_FALSE(parts.empty());
      auto meet = parts.front();
      for (const auto& p : parts) {
        CHECK(is_algebraic(f, p));
        CHECK(y.is_subset_of(p));
        meet &= p;
      }
      CHECK(meet == y);
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j)
          if (i != j) CHECK_FALSE(parts[j].is_subset_of(parts[i]));
    }
  }
}

TEST_CASE("Konig trace over strict descending chains") {
  for (const auto& [ref, n] : cases()) {
    CAPTURE(ref.name);
    const FreeAlgebra f(support::to_library(ref), static_cast<std::size_t>(n));
    const RadicalTopology t(f);
    std::vector<RadicalClosedSet> chain;
    for (const auto r : t.longest_radical_chain()) chain.push_back(t.radical_set(r));
    const auto trace = konig_trace(t, chain);
    CHECK(trace.max_path_length == t.radical_height());
    CHECK(trace.total_nodes() >= chain.size());
    for (std::size_t i = 0; i < trace.nodes.size(); ++i)
      for (const auto c : trace.nodes[i].children) CHECK(trace.nodes[c].parent == i);

    // Every strict pair chain of closed sets has a path of length at most 2.
    const auto cs = t.closed_sets();
    for (const auto& x : cs)
      for (const auto& y : cs)
        if (y.is_proper_subset_of(x)) {
          const std::vector<RadicalClosedSet> two{x, y};
          CHECK(konig_trace(t, two).max_path_length <= 2);
        }
  }
}

TEST_CASE("Konig trace rejects chains that are not strictly descending") {
  const FreeAlgebra f(corpus::cyclic_group(2), 1);
  const RadicalTopology t(f);
  const std::vector<RadicalClosedSet> up{t.radical_set(0), t.radical_set(1)};
  CHECK_THROWS_AS(konig_trace(t, up), SemanticError);
}

TEST_CASE("chain lengths in the radical lattice match the oracle") {
  for (const auto& [ref, n] : cases()) {
    CAPTURE(ref.name);
    const FreeAlgebra f(support::to_library(ref), static_cast<std::size_t>(n));
    const RadicalTopology t(f);
    const auto alg = oracle::algebraic_sets(ref, n);
    const std::vector<oracle::Points> fam(alg.begin(), alg.end());
    const auto expect = oracle::longest_chain(fam, [](const oracle::Points& a, const oracle::Points& b) {
      return a != b && std::includes(b.begin(), b.end(), a.begin(), a.end());
    });
    CHECK(t.radical_height() == expect);
  }
}

TEST_CASE("provenance strings") {
  const auto p = Provenance::make_union(Provenance::make_leaf(0),
                                        Provenance::make_union(Provenance::make_leaf(2), Provenance::make_leaf(1)));
  CHECK(p->to_string('R') == "R0 | R2 | R1");
  const auto q = Provenance::make_intersection(p, Provenance::make_leaf(3));
  CHECK(q->to_string('R') == "(R0 | R2 | R1) & R3");
  CHECK(Provenance::make_empty()->to_string('Y') == "empty");
}
