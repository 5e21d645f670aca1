#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/chains.hpp"

namespace uag {

/// A filter on the finite index set I = {0..k-1}; subsets of I are bitmasks.
/// On a finite set every filter is principal, so this is always the filter
/// of supersets of its generator.
class FilterOnFiniteSet {
 public:
  /// Largest supported |I|.
  static constexpr std::size_t kMaxIndex = 20;

  /// All supersets of `generator` (a nonempty subset of I).
  static FilterOnFiniteSet principal(std::size_t index_size, std::uint32_t generator);
  /// The principal ultrafilter at i.
  static FilterOnFiniteSet principal_at(std::size_t index_size, std::size_t i);
  /// Validates: nonempty, upward closed, closed under intersection, no empty set.
  static FilterOnFiniteSet from_members(std::size_t index_size, std::vector<std::uint32_t> members);

  std::size_t index_size() const noexcept { return k_; }
  const std::vector<std::uint32_t>& members() const noexcept { return members_; }
  bool contains(std::uint32_t subset) const noexcept;
  /// Intersection of all members.
  std::uint32_t generator() const noexcept;
  /// For every J ⊆ I exactly one of J, I \ J is a member.
  bool is_ultrafilter() const noexcept;
  /// Every ultrafilter on I, i.e. the principal ones at 0..k-1.
  static std::vector<FilterOnFiniteSet> all_ultrafilters(std::size_t index_size);

 private:
  FilterOnFiniteSet(std::size_t k, std::vector<std::uint32_t> members) : k_(k), members_(std::move(members)) {}

  std::size_t k_ = 0;
  std::vector<std::uint32_t> members_;  // ascending
};

/// Thrown for requests beyond finite, principal index data (infinite I or a
/// non-principal ultrafilter).
[[noreturn]] void reject_nonprincipal(const std::string& what);

struct ReducedProduct {
  FiniteAlgebra algebra;
  HomMap quotient_map;  // A^k (lexicographic codes) -> carrier of `algebra`
};

/// A^I / F: tuples identified when they agree on a member of the filter.
ReducedProduct reduced_product(const FiniteAlgebra& a, const FilterOnFiniteSet& filter);

struct TopologyComparison {
  bool equal = false;
  HomMap isomorphism;  // least isomorphism A -> B
  std::size_t radicals_a = 0;
  std::size_t radicals_b = 0;
  std::size_t equations_checked = 0;
  /// radical i of A corresponds to radical matching[i] of B
  std::vector<std::size_t> matching;
  std::string note;
};

/// Checks Rad_B(p≈q) = Rad_A(p≈q) for every formula class and that the two
/// radical enumerations coincide. Elementary equivalence of finite algebras
/// is isomorphism, so non-isomorphic inputs (or differing signatures) are
/// refused with SemanticError.
TopologyComparison verify_radical_topology_equal(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t vars);

struct PreservationEntry {
  std::string kind;   // "subalgebra", "coordinate", "ultrapower"
  std::string label;
  std::size_t size = 0;
  bool certified = false;
  std::size_t descending_radical = 0;
  std::size_t ascending_algebraic = 0;
};

struct PreservationReport {
  std::vector<PreservationEntry> entries;
  bool all_certified = false;
};

/// Runs certify_artinian on every subalgebra (one per distinct generated
/// subuniverse), every coordinate algebra Gamma(Y) of a nonempty algebraic
/// Y ⊆ A^n, and the ultrapowers of A over |I| = 2.
PreservationReport verify_preservation(const FiniteAlgebra& a, std::size_t vars, const CheckOptions& options = {});

}  // namespace uag
