#include "uag/free_algebra.hpp"

#include <algorithm>
#include <string>

#include "uag/budget.hpp"
#include "uag/error.hpp"

namespace uag {

namespace {

std::size_t hash_values(std::span<const Element> v) noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto e : v) h = (h ^ e) * 0x100000001b3ull;
  return h;
}

std::vector<Element> term_function_unchecked(const FiniteAlgebra& a, const Term& t, std::size_t vars,
                                             std::size_t points) {
  const std::size_t m = a.size();
  std::vector<Element> out(points);
  if (t.is_variable()) {
    // Coordinate i of point p is digit (vars - i) of p in base m.
    std::size_t stride = 1;
    for (std::size_t j = t.variable_index(); j < vars; ++j) stride *= m;
    for (std::size_t p = 0; p < points; ++p) out[p] = static_cast<Element>((p / stride) % m);
    return out;
  }
  const auto op = *a.signature().find(t.op());
  std::vector<std::vector<Element>> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(term_function_unchecked(a, c, vars, points));
  std::vector<Element> args(kids.size());
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t j = 0; j < kids.size(); ++j) args[j] = kids[j][p];
    out[p] = a.apply(op, args);
  }
  return out;
}

}  // namespace

std::vector<Element> term_function(const FiniteAlgebra& a, const Term& t, std::size_t vars) {
  validate_term(t, a.signature(), vars);
  const std::size_t points = budget::require_pow(a.size(), vars, "point space A^n");
  return term_function_unchecked(a, t, vars, points);
}

FreeAlgebra::FreeAlgebra(const FiniteAlgebra& base, std::size_t vars) : base_(base), vars_(vars) {
  if (vars == 0) throw SemanticError("variable count must be at least 1");
  const std::size_t m = base_.size();
  points_ = budget::require_pow(m, vars, "point space A^n");
  const auto& sig = base_.signature();

  for (std::size_t i = 1; i <= vars; ++i) {
    const auto v = term_function_unchecked(base_, Term::variable(i), vars, points_);
    insert(v, Term::variable(i));
  }
  for (std::size_t op = 0; op < sig.size(); ++op) {
    if (sig[op].arity != 0) continue;
    const std::vector<Element> v(points_, base_.table(op)[0]);
    insert(v, Term::operation(sig[op].name));
  }

  std::size_t layer_begin = 0;
  std::size_t layer_end = size();
  std::vector<Element> v(points_);
  std::vector<Element> args;
  while (layer_begin < layer_end) {
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t arity = sig[op].arity;
      if (arity == 0) continue;
      const std::size_t rows = budget::require_pow(layer_end, arity, "free algebra closure step");
      for (std::size_t code = 0; code < rows; ++code) {
        const auto idx = decode_tuple(layer_end, arity, code);
        bool fresh = false;
        for (const auto i : idx) fresh = fresh || i >= layer_begin;
        if (!fresh) continue;
        args.resize(arity);
        for (std::size_t p = 0; p < points_; ++p) {
          for (std::size_t j = 0; j < arity; ++j) args[j] = value_at(idx[j], p);
          v[p] = base_.apply(op, args);
        }
        if (lookup(v)) continue;
        std::vector<Term> kids;
        kids.reserve(arity);
        for (const auto i : idx) kids.push_back(witnesses_[i]);
        insert(v, Term::operation(sig[op].name, std::move(kids)));
      }
    }
    layer_begin = layer_end;
    layer_end = size();
  }

  // Induced operation tables on element indices.
  const std::size_t k = size();
  std::vector<std::vector<Element>> tables(sig.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t arity = sig[op].arity;
    const std::size_t rows = budget::require_pow(k, arity, "free algebra table");
    tables[op].resize(rows);
    for (std::size_t code = 0; code < rows; ++code) {
      const auto idx = decode_tuple(k, arity, code);
      args.resize(arity);
      for (std::size_t p = 0; p < points_; ++p) {
        for (std::size_t j = 0; j < arity; ++j) args[j] = value_at(idx[j], p);
        v[p] = base_.apply(op, args);
      }
      const auto hit = lookup(v);
      if (!hit) throw InternalError("free algebra is not closed under '" + sig[op].name + "'");
      tables[op][code] = static_cast<Element>(*hit);
    }
  }
  algebra_.emplace(sig, k, std::move(tables), "F(" + (base_.name().empty() ? std::string("A") : base_.name()) + "," +
                                                  std::to_string(vars) + ")");
}

bool FreeAlgebra::insert(std::span<const Element> v, Term&& witness) {
  if (lookup(v)) return false;
  budget::require((size() + 1) * points_, "free algebra value vectors");
  const std::size_t idx = size();
  values_.insert(values_.end(), v.begin(), v.end());
  witnesses_.push_back(std::move(witness));
  by_hash_.emplace(hash_values(v), idx);
  return true;
}

std::optional<std::size_t> FreeAlgebra::lookup(std::span<const Element> v) const {
  const auto [lo, hi] = by_hash_.equal_range(hash_values(v));
  for (auto it = lo; it != hi; ++it) {
    const auto cand = values(it->second);
    if (std::equal(cand.begin(), cand.end(), v.begin(), v.end())) return it->second;
  }
  return std::nullopt;
}

std::optional<std::size_t> FreeAlgebra::find(std::span<const Element> values) const {
  if (values.size() != points_) return std::nullopt;
  return lookup(values);
}

const Term& FreeAlgebra::witness(std::size_t idx) const {
  if (idx >= size())
    throw SemanticError("free algebra element " + std::to_string(idx) + " out of range 0.." +
                        std::to_string(size() - 1));
  return witnesses_[idx];
}

std::size_t FreeAlgebra::generator(std::size_t i) const {
  if (i == 0 || i > vars_) throw SemanticError("generator index outside 1..n");
  // Projections are inserted first; two projections coincide only when m = 1.
  const auto v = term_function_unchecked(base_, Term::variable(i), vars_, points_);
  return *lookup(v);
}

std::size_t FreeAlgebra::canonicalize(const Term& t) const {
  validate_term(t, base_.signature(), vars_);
  const auto v = term_function_unchecked(base_, t, vars_, points_);
  const auto hit = lookup(v);
  if (!hit) throw InternalError("term function of '" + format_term(t) + "' missing from the free algebra");
  return *hit;
}

std::optional<std::size_t> FreeAlgebra::function_space_bound() const noexcept {
  return budget::checked_pow(base_.size(), points_);
}

bool FreeAlgebra::saturates_bound() const noexcept {
  const auto bound = function_space_bound();
  return bound && *bound == size();
}

}  // namespace uag
