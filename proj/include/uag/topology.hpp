#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "uag/bitset.hpp"
#include "uag/free_algebra.hpp"
#include "uag/geometry.hpp"

namespace uag {

/// How a closed set was built from leaves (radical ideals or algebraic sets).
struct Provenance {
  enum class Kind { empty, leaf, union_of, intersection_of };

  Kind kind = Kind::empty;
  std::size_t leaf = 0;
  std::vector<std::shared_ptr<const Provenance>> children;

  static std::shared_ptr<const Provenance> make_empty();
  static std::shared_ptr<const Provenance> make_leaf(std::size_t index);
  /// Nested nodes of the same kind are flattened.
  static std::shared_ptr<const Provenance> make_union(std::shared_ptr<const Provenance> a,
                                                      std::shared_ptr<const Provenance> b);
  static std::shared_ptr<const Provenance> make_intersection(std::shared_ptr<const Provenance> a,
                                                             std::shared_ptr<const Provenance> b);

  /// e.g. "(R0 | R2) & R1", leaves prefixed with `leaf_prefix`.
  std::string to_string(char leaf_prefix) const;
};

using ProvenancePtr = std::shared_ptr<const Provenance>;

/// A closed set of the radical topology on At(x1..xn), seen through the
/// quotient F x F: bit f*|F|+g is set iff the formula class (f,g) is in it.
class RadicalClosedSet {
 public:
  RadicalClosedSet() = default;
  RadicalClosedSet(std::size_t free_size, BitSet pairs, ProvenancePtr provenance);
  static RadicalClosedSet from_radical(const Congruence& kernel, std::size_t leaf);

  std::size_t free_size() const noexcept { return k_; }
  const BitSet& pairs() const noexcept { return pairs_; }
  const ProvenancePtr& provenance() const noexcept { return provenance_; }

  bool contains(std::size_t f, std::size_t g) const noexcept { return pairs_.test(f * k_ + g); }
  bool is_subset_of(const RadicalClosedSet& o) const noexcept { return pairs_.is_subset_of(o.pairs_); }
  bool is_proper_subset_of(const RadicalClosedSet& o) const noexcept { return pairs_.is_proper_subset_of(o.pairs_); }

  /// Equality ignores provenance.
  friend bool operator==(const RadicalClosedSet& a, const RadicalClosedSet& b) { return a.pairs_ == b.pairs_; }

 private:
  std::size_t k_ = 0;
  BitSet pairs_;
  ProvenancePtr provenance_;
};

inline bool canonical_less(const RadicalClosedSet& a, const RadicalClosedSet& b) {
  return canonical_less(a.pairs(), b.pairs());
}

/// Throw SemanticError when the operands come from different free algebras.
RadicalClosedSet closed_union(const RadicalClosedSet& a, const RadicalClosedSet& b);
RadicalClosedSet closed_intersection(const RadicalClosedSet& a, const RadicalClosedSet& b);
bool contains_formula(const FreeAlgebra& f, const RadicalClosedSet& c, const AtomicFormula& phi);

/// Every A-radical ideal of F(A,n): the meet-closure of the m^n point kernels
/// together with the total relation Rad({}). Listed in canonical order of
/// their pair matrices (so the identity kernel first, the total one last).
std::vector<RadicalIdeal> enumerate_radical_ideals(const FreeAlgebra& f);

struct ClosedSetFamily {
  std::vector<RadicalClosedSet> b1;  // nonempty finite unions of radicals
  std::vector<RadicalClosedSet> b2;  // intersections of members of b1
  bool equal = false;
};

/// Leaves of the provenance trees index into `radicals`.
ClosedSetFamily compute_b1_b2(std::span<const RadicalIdeal> radicals);

/// No finite family of closed proper subsets covers `c`. In a finite lattice
/// this is: the union of the proper closed subsets of c differs from c.
bool is_irreducible(const RadicalClosedSet& c, std::span<const RadicalClosedSet> universe);

/// Maximal irreducible closed subsets of `c`, in canonical order. Throws
/// InternalError if they fail to recompose c or are redundant.
std::vector<RadicalClosedSet> irreducible_components(const RadicalClosedSet& c,
                                                     std::span<const RadicalClosedSet> universe);

/// Indices of a longest strictly descending chain (by proper inclusion) among
/// `sets`, largest first. Ties go to the canonically least choice.
std::vector<std::size_t> longest_chain(std::span<const BitSet> sets);

/// The radical lattice and its closed-set family for one F(A,n).
class RadicalTopology {
 public:
  explicit RadicalTopology(const FreeAlgebra& f);

  const FreeAlgebra& free_algebra() const noexcept { return *free_; }
  std::span<const RadicalIdeal> radicals() const noexcept { return radicals_; }
  const ClosedSetFamily& family() const noexcept { return family_; }
  /// All closed sets (= B2) in canonical order.
  std::span<const RadicalClosedSet> closed_sets() const noexcept { return family_.b2; }

  RadicalClosedSet radical_set(std::size_t i) const;
  std::optional<std::size_t> find_radical(const Congruence& kernel) const;
  std::optional<std::size_t> find_closed(const BitSet& pairs) const;

  /// Radicals contained in `c` that are maximal among those.
  std::vector<std::size_t> maximal_radicals_in(const RadicalClosedSet& c) const;

  /// Longest strict chains, counted in members.
  std::vector<std::size_t> longest_radical_chain() const;
  std::vector<std::size_t> longest_closed_chain() const;
  std::size_t radical_height() const { return longest_radical_chain().size(); }
  std::size_t closed_height() const { return longest_closed_chain().size(); }

 private:
  const FreeAlgebra* free_;
  std::vector<RadicalIdeal> radicals_;
  ClosedSetFamily family_;
  std::unordered_map<BitSet, std::size_t, BitSetHash> radical_index_;
  std::unordered_map<BitSet, std::size_t, BitSetHash> closed_index_;
};

/// Y = Y_1 ∩ ... ∩ Y_k with each Rad(Y_i) an irreducible component of the
/// closed set Rad(Y). Throws SemanticError if Y is not algebraic.
std::vector<PointSet> large_decomposition(const RadicalTopology& topology, const PointSet& y);

struct KonigNode {
  std::size_t radical = 0;  // index into RadicalTopology::radicals()
  std::size_t level = 0;    // 0-based chain position
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
};

struct KonigTrace {
  std::vector<KonigNode> nodes;
  std::vector<std::size_t> roots;
  std::size_t max_branching = 0;
  /// Longest root-to-leaf path, counted in nodes.
  std::size_t max_path_length = 0;
  std::size_t total_nodes() const noexcept { return nodes.size(); }
};

/// Tree for a strictly descending chain M_1 ⊃ M_2 ⊃ ... of closed sets:
/// roots are the maximal radicals of M_1; a node v at level k gets a child
/// v ∩ R for each maximal radical R of M_{k+1} with v ∩ R ⊊ v. Every path is
/// a strictly descending chain of radicals. Throws SemanticError on a chain
/// that is not strictly descending.
KonigTrace konig_trace(const RadicalTopology& topology, std::span<const RadicalClosedSet> chain);

struct ZariskiClosedSet {
  PointSet points;
  ProvenancePtr provenance;  // leaves index into the algebraic-set list
};

/// Algebraic sets of A^n (canonical sets of the radicals, canonical order).
std::vector<PointSet> algebraic_sets(std::span<const RadicalIdeal> radicals);

/// Closure of the algebraic sets under finite union (including the empty
/// union) and intersection, in canonical order.
std::vector<ZariskiClosedSet> enumerate_zariski_closed(std::span<const RadicalIdeal> radicals);

}  // namespace uag
