#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uag/geometry.hpp"
#include "uag/topology.hpp"

namespace uag {

struct CheckOptions {
  std::uint64_t seed = 0;
  /// Used whenever 2^(m^n) exceeds the size guard.
  std::size_t samples = 1000;
};

/// Calls `visit` on every subset of A^n in ascending bitmask order, or on
/// `options.samples` uniformly random subsets (seeded) when 2^(m^n) exceeds
/// the size guard. Returns true when the walk was exhaustive.
bool for_each_point_subset(std::size_t base_size, std::size_t dim, const CheckOptions& options,
                           const std::function<void(const PointSet&)>& visit);

/// Greedy scan in input order keeping a formula iff it shrinks the running
/// solution set, then one pruning pass so that no kept formula is redundant.
/// V(S0) = V(S) and |S0| <= m^n - |V(S)|.
EquationSystem finite_subsystem(const FiniteAlgebra& a, const EquationSystem& s);
/// Same on formula classes of F x F; returns the kept positions of `pairs`.
std::vector<std::size_t> finite_subsystem(const FreeAlgebra& f, std::span<const ElementPair> pairs);

/// Dual greedy: keep a point iff its kernel strictly refines the running
/// radical, then prune. Rad(E0) = Rad(E) and E0 is irredundant.
PointSet finite_support(const FreeAlgebra& f, const PointSet& e);

struct ChainLengths {
  std::size_t ascending_algebraic = 0;
  std::size_t descending_radical = 0;
};

/// Longest strict chains (counted in members) in the lattice of algebraic
/// sets and in the lattice of radical ideals.
ChainLengths max_chain_lengths(const RadicalTopology& topology);

/// The cover is { At \ Rad(a) : a in E } listed in ascending point order.
/// Returns positions (into e.codes()) of an irredundant finite subcover of
/// `s`, a set of formula classes given as an |F|x|F| pair matrix. Throws
/// SemanticError when the cover does not cover `s`.
std::vector<std::size_t> compactness_subcover(const FreeAlgebra& f, const PointSet& e, const BitSet& s);

/// Greedy set cover: repeatedly take the member covering the most uncovered
/// points of y (lowest index on ties). Returns ascending indices into
/// `cover`. Throws SemanticError when the cover is insufficient.
std::vector<std::size_t> contra_compact_subcover(const PointSet& y, std::span<const PointSet> cover);

enum class ChainKind { noetherian, artinian };

std::string to_string(ChainKind kind);

struct ConditionResult {
  std::string id;         // "i", "ii", ...
  std::string statement;  // short human description
  bool satisfied = false;
  /// Witness data in a stable order.
  std::vector<std::pair<std::string, std::int64_t>> witness;
};

struct ChainCertificate {
  ChainKind kind = ChainKind::artinian;
  std::size_t vars = 0;
  std::vector<ConditionResult> conditions;
  bool exhaustive = false;  // subset checks ran over every subset
  std::uint64_t seed = 0;
  bool consistent = false;  // cross-condition checks (chain-length duality)
  bool verdict = false;     // every condition satisfied and consistent

  const ConditionResult& condition(const std::string& id) const;
};

/// Evaluates conditions i-vi of the equational Artinian equivalence for
/// F(A,n). For a finite algebra every condition must hold; a false verdict
/// signals a kernel defect.
ChainCertificate certify_artinian(const FiniteAlgebra& a, std::size_t vars, const CheckOptions& options = {});

/// Evaluates the four equational noetherian assertions for F(A,n): finite
/// equivalent subsystems, finite subsystems of [S], the descending chain
/// condition on Zariski-closed sets, and termination of coordinate-algebra
/// epimorphism chains.
ChainCertificate certify_noetherian(const FiniteAlgebra& a, std::size_t vars, const CheckOptions& options = {});

}  // namespace uag
