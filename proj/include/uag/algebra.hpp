#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uag/bitset.hpp"
#include "uag/terms.hpp"

namespace uag {

/// Carrier elements are always 0..m-1.
using Element = std::uint32_t;
using ElementPair = std::pair<Element, Element>;

/// Lexicographic encoding of a tuple over {0..m-1}, first coordinate most
/// significant. Used for table rows and for points of A^n.
std::size_t encode_tuple(std::size_t m, std::span<const Element> tuple) noexcept;
std::vector<Element> decode_tuple(std::size_t m, std::size_t length, std::size_t code);

/// A finite algebra: an operation table per signature symbol, each a dense
/// row-major array of length m^arity.
class FiniteAlgebra {
 public:
  /// Validates table lengths and entry ranges (SemanticError) and the global
  /// size guard (BudgetError).
  FiniteAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Element>> tables, std::string name = {});

  const Signature& signature() const noexcept { return sig_; }
  std::size_t size() const noexcept { return size_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::span<const Element> table(std::size_t op) const noexcept { return tables_[op]; }
  Element apply(std::size_t op, std::span<const Element> args) const noexcept {
    return tables_[op][encode_tuple(size_, args)];
  }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.sig_ == b.sig_ && a.size_ == b.size_ && a.tables_ == b.tables_;
  }

 private:
  Signature sig_;
  std::size_t size_;
  std::vector<std::vector<Element>> tables_;
  std::string name_;
};

/// An equivalence relation on 0..m-1 stored as "least element of my class".
class Congruence {
 public:
  Congruence() = default;
  /// `representative[i]` may be any class label; it is normalized so that
  /// every element maps to the least member of its class.
  explicit Congruence(const std::vector<Element>& labels);

  static Congruence identity(std::size_t m);
  static Congruence total(std::size_t m);

  std::size_t size() const noexcept { return rep_.size(); }
  Element representative(Element a) const noexcept { return rep_[a]; }
  std::span<const Element> representatives() const noexcept { return rep_; }
  bool related(Element a, Element b) const noexcept { return rep_[a] == rep_[b]; }
  std::size_t class_count() const noexcept;
  /// Classes ordered by least member; members ascending.
  std::vector<std::vector<Element>> classes() const;

  bool is_identity() const noexcept { return class_count() == size(); }
  bool is_total() const noexcept { return class_count() <= 1; }

  /// Containment of relations: every related pair here is related in `o`.
  bool is_subset_of(const Congruence& o) const noexcept;
  Congruence meet(const Congruence& o) const;

  /// Bit f*m+g set iff f ~ g.
  BitSet pair_matrix() const;

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  std::vector<Element> rep_;
};

/// An element map between two algebras. Whether it preserves the operations
/// is checked by is_homomorphism, not assumed.
struct HomMap {
  std::vector<Element> map;

  Element operator()(Element a) const noexcept { return map[a]; }
  bool is_bijective(std::size_t target_size) const;
  friend bool operator==(const HomMap&, const HomMap&) = default;
};

bool is_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target, const HomMap& h);

Element eval_term(const FiniteAlgebra& a, const Term& t, std::span<const Element> point);

/// A^k with carrier A^k encoded lexicographically, operations componentwise.
FiniteAlgebra power_algebra(const FiniteAlgebra& a, std::size_t k);

/// Least subuniverse containing `seed` and every constant. Sorted ascending.
std::vector<Element> subalgebra_closure(const FiniteAlgebra& a, std::span<const Element> seed);

/// The subalgebra on a closed subset, relabelled 0..k-1 in ascending order.
FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a, std::span<const Element> universe);

/// Least congruence containing `pairs`.
Congruence congruence_closure(const FiniteAlgebra& a, std::span<const ElementPair> pairs);

/// Exhaustive check of the compatibility condition.
bool is_compatible(const FiniteAlgebra& a, const Congruence& theta);

struct Quotient {
  FiniteAlgebra algebra;
  HomMap projection;
};

/// A/theta with classes indexed by ascending least representative.
Quotient quotient_algebra(const FiniteAlgebra& a, const Congruence& theta);

inline constexpr std::size_t kDefaultIsomorphismNodes = 1'000'000;

/// Lexicographically least isomorphism a -> b, if any. Throws SemanticError
/// on differing signatures and BudgetError when the search exceeds
/// `node_budget` nodes.
std::optional<HomMap> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                       std::size_t node_budget = kDefaultIsomorphismNodes);

}  // namespace uag
