#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/geometry.hpp"
#include "uag/terms.hpp"

namespace uag {

/// A parsed model file.
///
///     signature
///       op mul 2
///       op e 0
///     algebra Z2
///       size 2                      # optional; inferred from the labels
///       table mul: 0,0=0 0,1=1 1,0=1 1,1=0
///       const e = 0
///     system S vars 1
///       mul(x1,x1) = e
///     points P dim 1
///       (0)
///
/// Line oriented, `#` comments, LF or CRLF. Exactly one signature, declared
/// before anything that uses it; names are unique per block kind.
struct ModelFile {
  struct Points {
    std::size_t dim = 0;
    std::vector<std::vector<Element>> tuples;
  };

  Signature signature;
  std::vector<std::string> algebra_order;
  std::map<std::string, FiniteAlgebra> algebras;
  std::map<std::string, EquationSystem> systems;
  std::map<std::string, Points> point_blocks;

  /// Throw SemanticError for an undefined name.
  const FiniteAlgebra& algebra(const std::string& name) const;
  const EquationSystem& system(const std::string& name) const;
  /// The named points as a subset of A^dim; labels are range-checked.
  PointSet points(const std::string& name, const FiniteAlgebra& a) const;
};

/// Throws ParseError (positions are line/column in `text`) or SemanticError.
ModelFile parse_model(std::string_view text);
/// Reads the file; SemanticError when it cannot be opened.
ModelFile load_model(const std::string& path);

/// An `algebra <name>` block (size, tables, constants) in model-file syntax.
std::string format_algebra_block(const FiniteAlgebra& a, const std::string& name);

}  // namespace uag
