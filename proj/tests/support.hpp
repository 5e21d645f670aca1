#pragma once
// Conversions between the oracle's plain containers and library types.

#include <uag/algebra.hpp>
#include <uag/free_algebra.hpp>
#include <uag/geometry.hpp>

#include <set>
#include <vector>

#include "oracle.hpp"

namespace support {

/// Library algebra with tables filled from the oracle's lambdas.
inline uag::FiniteAlgebra to_library(const oracle::Algebra& a) {
  uag::Signature sig;
  std::vector<std::vector<uag::Element>> tables;
  for (const auto& op : a.ops) {
    sig.add(op.name, static_cast<std::size_t>(op.arity));
    std::vector<uag::Element> t;
    for (const auto& args : oracle::all_points(a.size, op.arity)) t.push_back(static_cast<uag::Element>(op.eval(args)));
    tables.push_back(std::move(t));
  }
  return uag::FiniteAlgebra(sig, static_cast<std::size_t>(a.size), std::move(tables), a.name);
}

inline oracle::Points to_points(const uag::PointSet& s) {
  oracle::Points out;
  for (const auto code : s.codes()) {
    const auto p = s.point(code);
    out.insert(std::vector<int>(p.begin(), p.end()));
  }
  return out;
}

inline uag::PointSet to_point_set(int m, int n, const oracle::Points& pts) {
  auto out = uag::PointSet::empty(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (const auto& p : pts) {
    const std::vector<uag::Element> q(p.begin(), p.end());
    out.insert(q);
  }
  return out;
}

inline std::set<oracle::Fn> to_functions(const uag::FreeAlgebra& f) {
  std::set<oracle::Fn> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto v = f.values(i);
    out.insert(oracle::Fn(v.begin(), v.end()));
  }
  return out;
}

inline uag::PointSet from_mask(std::size_t m, std::size_t n, std::size_t mask) {
  auto out = uag::PointSet::empty(m, n);
  for (std::size_t c = 0; c < out.universe_size(); ++c)
    if ((mask >> c) & 1u) out.insert(c);
  return out;
}

}  // namespace support
