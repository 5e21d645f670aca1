#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "uag/algebra.hpp"

namespace uag {

/// Value vector of t over A^n: entry i is t evaluated at point i
/// (lexicographic point encoding, x1 most significant).
std::vector<Element> term_function(const FiniteAlgebra& a, const Term& t, std::size_t vars);

/// The n-generated free algebra of var(A), realized as the algebra of term
/// functions A^n -> A.
///
/// Elements are discovered breadth-first: layer 0 holds the projections
/// x1..xn and then the constants in signature order; layer d+1 applies every
/// operation (signature order) to every argument tuple over layers 0..d that
/// uses at least one layer-d element (tuples in lexicographic index order).
/// Each element keeps the term that first produced it as its witness, so
/// witnesses have minimal depth.
class FreeAlgebra {
 public:
  FreeAlgebra(const FiniteAlgebra& base, std::size_t vars);

  const FiniteAlgebra& base() const noexcept { return base_; }
  std::size_t vars() const noexcept { return vars_; }
  std::size_t size() const noexcept { return witnesses_.size(); }
  /// |A^n|, the length of every value vector.
  std::size_t point_count() const noexcept { return points_; }

  std::span<const Element> values(std::size_t idx) const noexcept {
    return {values_.data() + idx * points_, points_};
  }
  Element value_at(std::size_t idx, std::size_t point) const noexcept { return values_[idx * points_ + point]; }

  /// Throws SemanticError for an out-of-range index.
  const Term& witness(std::size_t idx) const;
  /// Index of the projection x_i (1-based).
  std::size_t generator(std::size_t i) const;

  /// The free algebra itself as a finite algebra on element indices.
  const FiniteAlgebra& algebra() const noexcept { return *algebra_; }

  /// Element index of the term function of t. Validates t against the
  /// signature and variable count (SemanticError).
  std::size_t canonicalize(const Term& t) const;
  std::optional<std::size_t> find(std::span<const Element> values) const;

  /// m^(m^n) when it fits in size_t. |F| never exceeds it; reaching it means
  /// every function A^n -> A is a term function.
  std::optional<std::size_t> function_space_bound() const noexcept;
  bool saturates_bound() const noexcept;

 private:
  std::optional<std::size_t> lookup(std::span<const Element> v) const;
  bool insert(std::span<const Element> v, Term&& witness);

  FiniteAlgebra base_;
  std::size_t vars_;
  std::size_t points_;
  std::vector<Element> values_;
  std::vector<Term> witnesses_;
  std::unordered_multimap<std::size_t, std::size_t> by_hash_;
  std::optional<FiniteAlgebra> algebra_;
};

}  // namespace uag
