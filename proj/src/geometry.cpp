#include "uag/geometry.hpp"

#include <map>

#include "uag/budget.hpp"
#include "uag/error.hpp"

namespace uag {

PointSet::PointSet(std::size_t base_size, std::size_t dim)
    : m_(base_size), n_(dim), bits_(budget::require_pow(base_size, dim, "point space A^n")) {}

PointSet PointSet::full(std::size_t base_size, std::size_t dim) {
  PointSet s(base_size, dim);
  s.bits_ = BitSet::full(s.bits_.size());
  return s;
}

PointSet PointSet::from_codes(std::size_t base_size, std::size_t dim, std::span<const std::size_t> codes) {
  PointSet s(base_size, dim);
  for (const auto c : codes) s.insert(c);
  return s;
}

void PointSet::insert(std::size_t code) {
  if (code >= bits_.size()) throw SemanticError("point code " + std::to_string(code) + " outside A^n");
  bits_.set(code);
}

void PointSet::insert(std::span<const Element> point) {
  if (point.size() != n_)
    throw SemanticError("point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(n_));
  for (const auto e : point)
    if (e >= m_) throw SemanticError("coordinate " + std::to_string(e) + " outside carrier 0.." + std::to_string(m_ - 1));
  bits_.set(encode_tuple(m_, point));
}

void PointSet::check_compatible(const PointSet& o) const {
  if (m_ != o.m_ || n_ != o.n_) throw SemanticError("point sets live in different spaces");
}

PointSet& PointSet::operator|=(const PointSet& o) {
  check_compatible(o);
  bits_ |= o.bits_;
  return *this;
}

PointSet& PointSet::operator&=(const PointSet& o) {
  check_compatible(o);
  bits_ &= o.bits_;
  return *this;
}

std::string format_point(std::span<const Element> point) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(point[i]);
  }
  return out + ")";
}

std::string format_points(const PointSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto code : s.codes()) {
    if (!first) out += ',';
    first = false;
    out += format_point(s.point(code));
  }
  return out + "}";
}

std::vector<ElementPair> canonical_pairs(const FreeAlgebra& f, const EquationSystem& s) {
  if (s.vars() != f.vars())
    throw SemanticError("system over " + std::to_string(s.vars()) + " variables used with a free algebra on " +
                        std::to_string(f.vars()));
  std::vector<ElementPair> out;
  out.reserve(s.size());
  for (const auto& phi : s.formulas())
    out.emplace_back(static_cast<Element>(f.canonicalize(phi.lhs)), static_cast<Element>(f.canonicalize(phi.rhs)));
  return out;
}

PointSet solution_set(const FiniteAlgebra& a, const EquationSystem& s) {
  auto out = PointSet::full(a.size(), s.vars());
  for (const auto& phi : s.formulas()) {
    const auto lhs = term_function(a, phi.lhs, s.vars());
    const auto rhs = term_function(a, phi.rhs, s.vars());
    for (std::size_t p = 0; p < lhs.size(); ++p)
      if (lhs[p] != rhs[p]) out.erase(p);
  }
  return out;
}

PointSet solution_set(const FreeAlgebra& f, std::span<const ElementPair> pairs) {
  auto out = PointSet::full(f.base().size(), f.vars());
  for (const auto& [x, y] : pairs) {
    if (x >= f.size() || y >= f.size()) throw SemanticError("pair member outside the free algebra");
    for (std::size_t p = 0; p < f.point_count(); ++p)
      if (f.value_at(x, p) != f.value_at(y, p)) out.erase(p);
  }
  return out;
}

PointSet zero_set(const FreeAlgebra& f, const Congruence& kernel) {
  if (kernel.size() != f.size()) throw SemanticError("congruence is not over this free algebra");
  auto out = PointSet::empty(f.base().size(), f.vars());
  for (std::size_t p = 0; p < f.point_count(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < f.size(); ++i)
      ok = f.value_at(i, p) == f.value_at(kernel.representative(static_cast<Element>(i)), p);
    if (ok) out.insert(p);
  }
  return out;
}

Congruence point_kernel(const FreeAlgebra& f, const PointSet& e) {
  if (e.base_size() != f.base().size() || e.dim() != f.vars())
    throw SemanticError("point set does not live in A^n of this free algebra");
  const auto codes = e.codes();
  std::map<std::vector<Element>, Element> ids;
  std::vector<Element> labels(f.size());
  std::vector<Element> key(codes.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < codes.size(); ++j) key[j] = f.value_at(i, codes[j]);
    labels[i] = ids.emplace(key, static_cast<Element>(ids.size())).first->second;
  }
  return Congruence(labels);
}

Congruence point_kernel(const FreeAlgebra& f, std::size_t point_code) {
  if (point_code >= f.point_count()) throw SemanticError("point code outside A^n");
  std::vector<Element> labels(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) labels[i] = f.value_at(i, point_code);
  return Congruence(labels);
}

RadicalIdeal radical_of_points(const FreeAlgebra& f, const PointSet& e) {
  auto kernel = point_kernel(f, e);
  if (!is_compatible(f.algebra(), kernel)) throw InternalError("radical kernel is not a congruence on F");
  auto canonical = zero_set(f, kernel);
  return {std::move(kernel), e, std::move(canonical)};
}

PointSet algebraic_closure(const FreeAlgebra& f, const PointSet& e) { return zero_set(f, point_kernel(f, e)); }

bool is_algebraic(const FreeAlgebra& f, const PointSet& y) { return algebraic_closure(f, y) == y; }

RadicalIdeal radical_of_system(const FreeAlgebra& f, const EquationSystem& s) {
  const auto pairs = canonical_pairs(f, s);
  return radical_of_points(f, solution_set(f, pairs));
}

bool systems_equivalent(const FiniteAlgebra& a, const EquationSystem& s1, const EquationSystem& s2) {
  if (s1.vars() != s2.vars()) throw SemanticError("systems over different variable counts");
  return solution_set(a, s1) == solution_set(a, s2);
}

Congruence ideal_generated(const FreeAlgebra& f, const EquationSystem& s) {
  const auto pairs = canonical_pairs(f, s);
  return congruence_closure(f.algebra(), pairs);
}

CoordinateAlgebra coordinate_algebra(const FreeAlgebra& f, const PointSet& y, CoordinatePolicy policy) {
  if (y.empty() && !policy.allow_trivial)
    throw SemanticError("coordinate algebra of the empty set is undefined (use --allow-trivial)");
  const auto rad = radical_of_points(f, y);
  auto gamma = quotient_algebra(f.algebra(), rad.kernel);

  // T(Y): distinct restrictions of term functions to Y, numbered in order of
  // the first free-algebra element that produces them.
  const auto codes = y.codes();
  std::map<std::vector<Element>, Element> index;
  std::vector<std::vector<Element>> restrictions;
  std::vector<Element> restriction_of(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::vector<Element> r(codes.size());
    for (std::size_t j = 0; j < codes.size(); ++j) r[j] = f.value_at(i, codes[j]);
    const auto [it, inserted] = index.emplace(r, static_cast<Element>(restrictions.size()));
    if (inserted) restrictions.push_back(std::move(r));
    restriction_of[i] = it->second;
  }

  const auto& sig = f.base().signature();
  const std::size_t k = restrictions.size();
  std::vector<std::vector<Element>> tables(sig.size());
  std::vector<Element> args, v(codes.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t arity = sig[op].arity;
    const std::size_t rows = budget::require_pow(k, arity, "T(Y) table");
    tables[op].resize(rows);
    for (std::size_t code = 0; code < rows; ++code) {
      const auto idx = decode_tuple(k, arity, code);
      args.resize(arity);
      for (std::size_t j = 0; j < codes.size(); ++j) {
        for (std::size_t a = 0; a < arity; ++a) args[a] = restrictions[idx[a]][j];
        v[j] = f.base().apply(op, args);
      }
      const auto it = index.find(v);
      if (it == index.end()) throw InternalError("T(Y) is not closed under '" + sig[op].name + "'");
      tables[op][code] = it->second;
    }
  }
  FiniteAlgebra ty(sig, k, std::move(tables), "T(Y)");

  // Class c of gamma has least representative r; send it to r's restriction.
  HomMap iso;
  const auto classes = rad.kernel.classes();
  iso.map.reserve(classes.size());
  for (const auto& cls : classes) iso.map.push_back(restriction_of[cls.front()]);
  if (!iso.is_bijective(ty.size()) || !is_homomorphism(gamma.algebra, ty, iso))
    throw InternalError("Gamma(Y) -> T(Y) is not an isomorphism");
  gamma.algebra.set_name("Gamma(Y)");
  return {std::move(gamma.algebra), std::move(ty), std::move(iso), y};
}

}  // namespace uag
