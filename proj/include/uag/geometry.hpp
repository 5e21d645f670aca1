#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/bitset.hpp"
#include "uag/free_algebra.hpp"
#include "uag/terms.hpp"

namespace uag {

/// A subset of A^n, bit-indexed by the lexicographic point code.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t base_size, std::size_t dim);

  static PointSet empty(std::size_t base_size, std::size_t dim) { return PointSet(base_size, dim); }
  static PointSet full(std::size_t base_size, std::size_t dim);
  static PointSet from_codes(std::size_t base_size, std::size_t dim, std::span<const std::size_t> codes);

  std::size_t base_size() const noexcept { return m_; }
  std::size_t dim() const noexcept { return n_; }
  /// m^n
  std::size_t universe_size() const noexcept { return bits_.size(); }
  std::size_t count() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  bool contains(std::size_t code) const noexcept { return bits_.test(code); }
  void insert(std::size_t code);
  void insert(std::span<const Element> point);
  void erase(std::size_t code) noexcept { bits_.reset(code); }

  std::vector<std::size_t> codes() const { return bits_.members(); }
  std::vector<Element> point(std::size_t code) const { return decode_tuple(m_, n_, code); }
  const BitSet& bits() const noexcept { return bits_; }

  bool is_subset_of(const PointSet& o) const noexcept { return bits_.is_subset_of(o.bits_); }
  PointSet& operator|=(const PointSet& o);
  PointSet& operator&=(const PointSet& o);
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  void check_compatible(const PointSet& o) const;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  BitSet bits_;
};

/// "(a1,...,an)"
std::string format_point(std::span<const Element> point);
/// "{(0,1),(1,1)}" in lexicographic order.
std::string format_points(const PointSet& s);
/// Canonical order on point sets (size, then lexicographic member lists).
inline bool canonical_less(const PointSet& a, const PointSet& b) { return canonical_less(a.bits(), b.bits()); }

/// An A-radical ideal, stored as the congruence it induces on the free
/// algebra F(A,n) together with the points it came from and its canonical
/// algebraic set V(Rad(E)).
struct RadicalIdeal {
  Congruence kernel;
  PointSet defining_points;
  PointSet canonical_set;

  friend bool operator==(const RadicalIdeal& a, const RadicalIdeal& b) { return a.kernel == b.kernel; }
};

struct CoordinateAlgebra {
  FiniteAlgebra gamma;  // F / Rad(Y)
  FiniteAlgebra tY;     // term functions restricted to Y
  HomMap iso;           // gamma -> tY
  PointSet points;
};

struct CoordinatePolicy {
  /// Map Y = {} to the one-element algebra instead of rejecting it.
  bool allow_trivial = false;
};

/// Pairs (canon(p), canon(q)) of the system's formulas, in order.
std::vector<ElementPair> canonical_pairs(const FreeAlgebra& f, const EquationSystem& s);

PointSet solution_set(const FiniteAlgebra& a, const EquationSystem& s);
/// V of a relation on F given as pairs of element indices.
PointSet solution_set(const FreeAlgebra& f, std::span<const ElementPair> pairs);
/// V of the congruence `kernel` on F: points where each class is constant.
PointSet zero_set(const FreeAlgebra& f, const Congruence& kernel);

/// { (f,g) : f and g agree at every point of E }.
Congruence point_kernel(const FreeAlgebra& f, const PointSet& e);
Congruence point_kernel(const FreeAlgebra& f, std::size_t point_code);

RadicalIdeal radical_of_points(const FreeAlgebra& f, const PointSet& e);
PointSet algebraic_closure(const FreeAlgebra& f, const PointSet& e);
bool is_algebraic(const FreeAlgebra& f, const PointSet& y);
RadicalIdeal radical_of_system(const FreeAlgebra& f, const EquationSystem& s);
bool systems_equivalent(const FiniteAlgebra& a, const EquationSystem& s1, const EquationSystem& s2);
/// [S]: the least congruence on F containing the canonical pairs of S.
Congruence ideal_generated(const FreeAlgebra& f, const EquationSystem& s);
CoordinateAlgebra coordinate_algebra(const FreeAlgebra& f, const PointSet& y, CoordinatePolicy policy = {});

}  // namespace uag
