#pragma once
// Brute-force reference implementations used by the tests. Nothing here
// calls into the library: operations are plain lambdas, term functions are
// found by naive fixpoint iteration, and closures are computed straight from
// their definitions.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Fn = std::vector<int>;  // values of a term function on every point of A^n
using Points = std::set<std::vector<int>>;

struct Op {
  std::string name;
  int arity;
  std::function<int(const std::vector<int>&)> eval;
};

struct Algebra {
  std::string name;
  int size;
  std::vector<Op> ops;
};

inline Algebra semilattice2() {
  return {"SL2", 2, {{"meet", 2, [](const std::vector<int>& a) { return std::min(a[0], a[1]); }}}};
}

inline Algebra cyclic(int k) {
  return {"Z" + std::to_string(k),
          k,
          {{"mul", 2, [k](const std::vector<int>& a) { return (a[0] + a[1]) % k; }},
           {"inv", 1, [k](const std::vector<int>& a) { return (k - a[0]) % k; }},
           {"e", 0, [](const std::vector<int>&) { return 0; }}}};
}

inline Algebra zero_mul2() {
  return {"ZeroMul2",
          2,
          {{"mul", 2, [](const std::vector<int>&) { return 0; }},
           {"inv", 1, [](const std::vector<int>& a) { return a[0]; }},
           {"e", 0, [](const std::vector<int>&) { return 0; }}}};
}

inline std::vector<Algebra> corpus() { return {semilattice2(), cyclic(2), cyclic(3), zero_mul2()}; }

/// All points of A^n; the first coordinate varies slowest.
inline std::vector<std::vector<int>> all_points(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n, 0);
  while (true) {
    out.push_back(p);
    int i = n - 1;
    while (i >= 0 && ++p[i] == m) p[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

/// Every term function A^n -> A, by iterating the operations to a fixpoint.
inline std::set<Fn> term_functions(const Algebra& a, int n) {
  const auto pts = all_points(a.size, n);
  const std::size_t np = pts.size();
  std::set<Fn> fns;
  for (int i = 0; i < n; ++i) {
    Fn f(np);
    for (std::size_t p = 0; p < np; ++p) f[p] = pts[p][i];
    fns.insert(f);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Fn> cur(fns.begin(), fns.end());
    for (const auto& op : a.ops) {
      std::vector<std::size_t> idx(op.arity, 0);
      while (true) {
        Fn f(np);
        for (std::size_t p = 0; p < np; ++p) {
          std::vector<int> args;
          for (const auto j : idx) args.push_back(cur[j][p]);
          f[p] = op.eval(args);
        }
        if (fns.insert(f).second) grew = true;
        int i = op.arity - 1;
        while (i >= 0 && ++idx[i] == cur.size()) idx[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  return fns;
}

/// Pairs of term functions that agree on every point of e.
inline std::set<std::pair<Fn, Fn>> radical(const std::set<Fn>& fns, const std::vector<std::vector<int>>& pts,
                                           const Points& e) {
  std::set<std::pair<Fn, Fn>> out;
  for (const auto& f : fns)
    for (const auto& g : fns) {
      bool agree = true;
      for (std::size_t p = 0; p < pts.size() && agree; ++p)
        if (e.count(pts[p]) && f[p] != g[p]) agree = false;
      if (agree) out.insert({f, g});
    }
  return out;
}

/// Points where every pair agrees.
inline Points zeros(const std::set<std::pair<Fn, Fn>>& pairs, const std::vector<std::vector<int>>& pts) {
  Points out;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    bool ok = true;
    for (const auto& [f, g] : pairs)
      if (f[p] != g[p]) {
        ok = false;
        break;
      }
    if (ok) out.insert(pts[p]);
  }
  return out;
}

inline Points closure(const Algebra& a, int n, const Points& e) {
  const auto pts = all_points(a.size, n);
  return zeros(radical(term_functions(a, n), pts, e), pts);
}

/// Every algebraic set of A^n (closures of all subsets).
inline std::set<Points> algebraic_sets(const Algebra& a, int n) {
  const auto pts = all_points(a.size, n);
  const auto fns = term_functions(a, n);
  std::set<Points> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pts.size()); ++mask) {
    Points e;
    for (std::size_t p = 0; p < pts.size(); ++p)
      if ((mask >> p) & 1u) e.insert(pts[p]);
    out.insert(zeros(radical(fns, pts, e), pts));
  }
  return out;
}

/// Finite unions of algebraic sets, with the empty union.
inline std::set<Points> zariski_closed(const Algebra& a, int n) {
  std::set<Points> out{Points{}};
  bool grew = true;
  const auto alg = algebraic_sets(a, n);
  while (grew) {
    grew = false;
    const std::vector<Points> cur(out.begin(), out.end());
    for (const auto& x : cur)
      for (const auto& y : alg) {
        Points u = x;
        u.insert(y.begin(), y.end());
        if (out.insert(u).second) grew = true;
      }
  }
  return out;
}

/// Longest strict chain under inclusion in a finite family, counted in members.
template <class T, class Subset>
std::size_t longest_chain(const std::vector<T>& family, Subset proper_subset) {
  std::vector<std::size_t> best(family.size(), 1);
  // Longest path in the strict-inclusion DAG by repeated relaxation.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = 0; j < family.size(); ++j)
        if (proper_subset(family[j], family[i]) && best[j] + 1 > best[i]) {
          best[i] = best[j] + 1;
          changed = true;
        }
  }
  std::size_t out = 0;
  for (const auto b : best) out = std::max(out, b);
  return out;
}

}  // namespace oracle
