#include "uag/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "uag/budget.hpp"
#include "uag/error.hpp"

namespace uag {

std::size_t encode_tuple(std::size_t m, std::span<const Element> tuple) noexcept {
  std::size_t code = 0;
  for (const auto e : tuple) code = code * m + e;
  return code;
}

std::vector<Element> decode_tuple(std::size_t m, std::size_t length, std::size_t code) {
  std::vector<Element> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<Element>(code % m);
    code /= m;
  }
  return out;
}

FiniteAlgebra::FiniteAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Element>> tables,
                             std::string name)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), name_(std::move(name)) {
  if (size_ == 0) throw SemanticError("algebra carrier must be nonempty");
  budget::require(size_, "algebra carrier");
  if (tables_.size() != sig_.size())
    throw SemanticError("expected " + std::to_string(sig_.size()) + " operation tables, got " +
                        std::to_string(tables_.size()));
  for (std::size_t op = 0; op < sig_.size(); ++op) {
    const auto expected = budget::require_pow(size_, sig_[op].arity, "table of '" + sig_[op].name + "'");
    if (tables_[op].size() != expected)
      throw SemanticError("table of '" + sig_[op].name + "' has " + std::to_string(tables_[op].size()) +
                          " entries, expected " + std::to_string(expected));
    for (const auto v : tables_[op])
      if (v >= size_)
        throw SemanticError("table of '" + sig_[op].name + "' has entry " + std::to_string(v) + " outside 0.." +
                            std::to_string(size_ - 1));
  }
}

// --- Congruence -------------------------------------------------------------

Congruence::Congruence(const std::vector<Element>& labels) : rep_(labels.size()) {
  std::unordered_map<Element, Element> least;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, inserted] = least.emplace(labels[i], static_cast<Element>(i));
    rep_[i] = it->second;
  }
}

Congruence Congruence::identity(std::size_t m) {
  std::vector<Element> labels(m);
  std::iota(labels.begin(), labels.end(), Element{0});
  return Congruence(labels);
}

Congruence Congruence::total(std::size_t m) { return Congruence(std::vector<Element>(m, 0)); }

std::size_t Congruence::class_count() const noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < rep_.size(); ++i)
    if (rep_[i] == i) ++c;
  return c;
}

std::vector<std::vector<Element>> Congruence::classes() const {
  std::vector<std::vector<Element>> out;
  std::vector<std::size_t> slot(rep_.size());
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    if (rep_[i] == i) {
      slot[i] = out.size();
      out.emplace_back();
    }
    out[slot[rep_[i]]].push_back(static_cast<Element>(i));
  }
  return out;
}

bool Congruence::is_subset_of(const Congruence& o) const noexcept {
  // Each class here must sit inside one class of o.
  for (std::size_t i = 0; i < rep_.size(); ++i)
    if (o.rep_[i] != o.rep_[rep_[i]]) return false;
  return true;
}

Congruence Congruence::meet(const Congruence& o) const {
  std::vector<Element> labels(rep_.size());
  std::unordered_map<std::uint64_t, Element> ids;
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    const std::uint64_t key = (std::uint64_t{rep_[i]} << 32) | o.rep_[i];
    labels[i] = ids.emplace(key, static_cast<Element>(ids.size())).first->second;
  }
  return Congruence(labels);
}

BitSet Congruence::pair_matrix() const {
  const std::size_t m = rep_.size();
  BitSet out(m * m);
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g)
      if (rep_[f] == rep_[g]) out.set(f * m + g);
  return out;
}

// --- Homomorphisms ----------------------------------------------------------

bool HomMap::is_bijective(std::size_t target_size) const {
  if (map.size() != target_size) return false;
  std::vector<bool> hit(target_size, false);
  for (const auto v : map) {
    if (v >= target_size || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool is_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target, const HomMap& h) {
  if (!(source.signature() == target.signature()) || h.map.size() != source.size()) return false;
  for (const auto v : h.map)
    if (v >= target.size()) return false;
  const std::size_t m = source.size();
  std::vector<Element> image;
  for (std::size_t op = 0; op < source.signature().size(); ++op) {
    const std::size_t arity = source.signature()[op].arity;
    const auto table = source.table(op);
    for (std::size_t code = 0; code < table.size(); ++code) {
      const auto args = decode_tuple(m, arity, code);
      image.resize(arity);
      for (std::size_t j = 0; j < arity; ++j) image[j] = h(args[j]);
      if (h(table[code]) != target.apply(op, image)) return false;
    }
  }
  return true;
}

// --- Evaluation and constructions -------------------------------------------

Element eval_term(const FiniteAlgebra& a, const Term& t, std::span<const Element> point) {
  if (t.is_variable()) return point[t.variable_index() - 1];
  const auto op = a.signature().find(t.op());
  if (!op) throw SemanticError("unknown symbol '" + t.op() + "'");
  std::vector<Element> args;
  args.reserve(t.children().size());
  for (const auto& c : t.children()) args.push_back(eval_term(a, c, point));
  return a.apply(*op, args);
}

FiniteAlgebra power_algebra(const FiniteAlgebra& a, std::size_t k) {
  if (k == 0) throw SemanticError("power exponent must be positive");
  const std::size_t m = a.size();
  const std::size_t carrier = budget::require_pow(m, k, "power algebra carrier");
  const auto& sig = a.signature();
  std::vector<std::vector<Element>> tables(sig.size());
  std::vector<std::vector<Element>> decoded(carrier);
  for (std::size_t x = 0; x < carrier; ++x) decoded[x] = decode_tuple(m, k, x);

  std::vector<Element> args, component(k);
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t arity = sig[op].arity;
    const std::size_t rows = budget::require_pow(carrier, arity, "power algebra table");
    tables[op].resize(rows);
    for (std::size_t code = 0; code < rows; ++code) {
      const auto outer = decode_tuple(carrier, arity, code);
      for (std::size_t c = 0; c < k; ++c) {
        args.resize(arity);
        for (std::size_t j = 0; j < arity; ++j) args[j] = decoded[outer[j]][c];
        component[c] = a.apply(op, args);
      }
      tables[op][code] = static_cast<Element>(encode_tuple(m, component));
    }
  }
  std::string name = a.name().empty() ? std::string() : a.name() + "^" + std::to_string(k);
  return FiniteAlgebra(sig, carrier, std::move(tables), std::move(name));
}

std::vector<Element> subalgebra_closure(const FiniteAlgebra& a, std::span<const Element> seed) {
  const std::size_t m = a.size();
  std::vector<bool> in(m, false);
  std::vector<Element> members;
  auto add = [&](Element e) {
    if (!in[e]) {
      in[e] = true;
      members.push_back(e);
    }
  };
  for (const auto e : seed) {
    if (e >= m) throw SemanticError("seed element " + std::to_string(e) + " outside carrier");
    add(e);
  }
  for (std::size_t op = 0; op < a.signature().size(); ++op)
    if (a.signature()[op].arity == 0) add(a.table(op)[0]);

  // Re-scan until no new element appears; the member list only grows.
  bool grew = true;
  std::vector<Element> args;
  while (grew) {
    grew = false;
    const std::vector<Element> snapshot = members;
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
      const std::size_t arity = a.signature()[op].arity;
      if (arity == 0) continue;
      const std::size_t rows = *budget::checked_pow(snapshot.size(), arity);
      for (std::size_t code = 0; code < rows; ++code) {
        const auto idx = decode_tuple(snapshot.size(), arity, code);
        args.resize(arity);
        for (std::size_t j = 0; j < arity; ++j) args[j] = snapshot[idx[j]];
        const auto r = a.apply(op, args);
        if (!in[r]) {
          add(r);
          grew = true;
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a, std::span<const Element> universe) {
  if (universe.empty()) throw SemanticError("empty subuniverse has no algebra");
  std::vector<Element> sorted(universe.begin(), universe.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::optional<Element>> index(a.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<Element>(i);

  const auto& sig = a.signature();
  const std::size_t k = sorted.size();
  std::vector<std::vector<Element>> tables(sig.size());
  std::vector<Element> args;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t arity = sig[op].arity;
    const std::size_t rows = budget::require_pow(k, arity, "subalgebra table");
    tables[op].resize(rows);
    for (std::size_t code = 0; code < rows; ++code) {
      const auto idx = decode_tuple(k, arity, code);
      args.resize(arity);
      for (std::size_t j = 0; j < arity; ++j) args[j] = sorted[idx[j]];
      const auto r = index[a.apply(op, args)];
      if (!r) throw SemanticError("subset is not closed under '" + sig[op].name + "'");
      tables[op][code] = *r;
    }
  }
  return FiniteAlgebra(sig, k, std::move(tables));
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Element{0}); }

  Element find(Element x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(Element a, Element b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    // Keep the smaller element as root so roots are class minima.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<Element> parent_;
};

}  // namespace

Congruence congruence_closure(const FiniteAlgebra& a, std::span<const ElementPair> pairs) {
  const std::size_t m = a.size();
  UnionFind uf(m);
  for (const auto& [x, y] : pairs) {
    if (x >= m || y >= m) throw SemanticError("pair member outside carrier");
    uf.unite(x, y);
  }

  // Merge-then-propagate: two argument tuples that are classwise equal must
  // produce related results. Iterate to the fixpoint.
  bool changed = true;
  std::unordered_map<std::size_t, Element> seen;
  std::vector<Element> canon;
  while (changed) {
    changed = false;
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
      const std::size_t arity = a.signature()[op].arity;
      if (arity == 0) continue;
      const auto table = a.table(op);
      seen.clear();
      for (std::size_t code = 0; code < table.size(); ++code) {
        const auto args = decode_tuple(m, arity, code);
        canon.resize(arity);
        for (std::size_t j = 0; j < arity; ++j) canon[j] = uf.find(args[j]);
        const auto key = encode_tuple(m, canon);
        const auto [it, inserted] = seen.emplace(key, table[code]);
        if (!inserted && uf.unite(it->second, table[code])) changed = true;
      }
    }
  }

  std::vector<Element> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = uf.find(static_cast<Element>(i));
  Congruence theta(labels);
  if (!is_compatible(a, theta)) throw InternalError("congruence closure produced an incompatible partition");
  return theta;
}

bool is_compatible(const FiniteAlgebra& a, const Congruence& theta) {
  const std::size_t m = a.size();
  if (theta.size() != m) return false;
  std::vector<Element> canon;
  std::unordered_map<std::size_t, Element> seen;
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const std::size_t arity = a.signature()[op].arity;
    const auto table = a.table(op);
    seen.clear();
    for (std::size_t code = 0; code < table.size(); ++code) {
      const auto args = decode_tuple(m, arity, code);
      canon.resize(arity);
      for (std::size_t j = 0; j < arity; ++j) canon[j] = theta.representative(args[j]);
      const auto [it, inserted] = seen.emplace(encode_tuple(m, canon), table[code]);
      if (!inserted && !theta.related(it->second, table[code])) return false;
    }
  }
  return true;
}

Quotient quotient_algebra(const FiniteAlgebra& a, const Congruence& theta) {
  if (theta.size() != a.size()) throw SemanticError("congruence is over a carrier of a different size");
  const std::size_t m = a.size();
  std::vector<Element> reps;
  std::vector<Element> class_of(m);
  for (std::size_t i = 0; i < m; ++i)
    if (theta.representative(static_cast<Element>(i)) == i) reps.push_back(static_cast<Element>(i));
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = theta.representative(static_cast<Element>(i));
    class_of[i] = static_cast<Element>(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
  }

  const auto& sig = a.signature();
  const std::size_t k = reps.size();
  std::vector<std::vector<Element>> tables(sig.size());
  std::vector<Element> args;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t arity = sig[op].arity;
    const std::size_t rows = budget::require_pow(k, arity, "quotient table");
    tables[op].resize(rows);
    for (std::size_t code = 0; code < rows; ++code) {
      const auto idx = decode_tuple(k, arity, code);
      args.resize(arity);
      for (std::size_t j = 0; j < arity; ++j) args[j] = reps[idx[j]];
      tables[op][code] = class_of[a.apply(op, args)];
    }
  }
  FiniteAlgebra q(sig, k, std::move(tables), a.name().empty() ? std::string() : a.name() + "/~");
  HomMap proj{class_of};
  return {std::move(q), std::move(proj)};
}

namespace {

class IsomorphismSearch {
 public:
  IsomorphismSearch(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t node_budget)
      : a_(a), b_(b), budget_(node_budget), image_(a.size(), kUnset), used_(b.size(), false) {}

  std::optional<HomMap> run() {
    if (!search(0)) return std::nullopt;
    return HomMap{image_};
  }

 private:
  static constexpr Element kUnset = static_cast<Element>(-1);

  bool search(std::size_t next) {
    if (next == a_.size()) return true;
    for (Element cand = 0; cand < b_.size(); ++cand) {
      if (used_[cand]) continue;
      if (++nodes_ > budget_)
        throw BudgetError("isomorphism search exceeded " + std::to_string(budget_) + " nodes");
      image_[next] = cand;
      used_[cand] = true;
      if (consistent(static_cast<Element>(next)) && search(next + 1)) return true;
      used_[cand] = false;
      image_[next] = kUnset;
    }
    return false;
  }

  // All table rows whose arguments and result are already mapped, and that
  // mention the newest element, must commute with the partial map.
  bool consistent(Element newest) const {
    const std::size_t m = a_.size();
    std::vector<Element> mapped;
    for (std::size_t op = 0; op < a_.signature().size(); ++op) {
      const std::size_t arity = a_.signature()[op].arity;
      const auto table = a_.table(op);
      const std::size_t rows = *budget::checked_pow(newest + 1, arity);
      for (std::size_t code = 0; code < rows; ++code) {
        const auto args = decode_tuple(newest + 1, arity, code);
        const Element result = table[encode_tuple(m, args)];
        const bool mentions = std::find(args.begin(), args.end(), newest) != args.end() || result == newest;
        if (!mentions || result > newest) continue;
        mapped.resize(arity);
        for (std::size_t j = 0; j < arity; ++j) mapped[j] = image_[args[j]];
        if (b_.apply(op, mapped) != image_[result]) return false;
      }
    }
    return true;
  }

  const FiniteAlgebra& a_;
  const FiniteAlgebra& b_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Element> image_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<HomMap> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t node_budget) {
  if (!(a.signature() == b.signature())) throw SemanticError("isomorphism search needs identical signatures");
  if (a.size() != b.size()) return std::nullopt;
  auto h = IsomorphismSearch(a, b, node_budget).run();
  if (h && !(is_homomorphism(a, b, *h) && h->is_bijective(b.size())))
    throw InternalError("isomorphism search returned a map that is not an isomorphism");
  return h;
}

}  // namespace uag
