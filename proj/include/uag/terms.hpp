#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace uag {

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OpSymbol&, const OpSymbol&) = default;
};

/// An ordered list of operation symbols. Arity 0 is a constant.
class Signature {
 public:
  Signature() = default;

  /// Appends a symbol; throws SemanticError on a duplicate or ill-formed name.
  void add(std::string name, std::size_t arity);

  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }
  const OpSymbol& operator[](std::size_t i) const { return ops_[i]; }
  std::span<const OpSymbol> ops() const noexcept { return ops_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t max_arity() const noexcept;

  friend bool operator==(const Signature& a, const Signature& b) { return a.ops_ == b.ops_; }

 private:
  std::vector<OpSymbol> ops_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// True for `[A-Za-z_][A-Za-z0-9_]*`.
bool is_identifier(std::string_view s) noexcept;

/// True for the reserved variable spelling `x<digits>`.
bool is_variable_name(std::string_view s) noexcept;

/// A term of T_L(x1..xn): a variable x_i (1-based) or an operation applied
/// to exactly `arity` subterms. Equality is syntactic.
class Term {
 public:
  static Term variable(std::size_t index);
  static Term operation(std::string op, std::vector<Term> children = {});

  bool is_variable() const noexcept { return variable_ != 0; }
  std::size_t variable_index() const noexcept { return variable_; }
  const std::string& op() const noexcept { return op_; }
  std::span<const Term> children() const noexcept { return children_; }

  std::size_t depth() const noexcept;
  /// Largest variable index occurring, 0 for a ground term.
  std::size_t max_variable() const noexcept;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  std::size_t variable_ = 0;
  std::string op_;
  std::vector<Term> children_;
};

/// Throws SemanticError unless every operation is declared with the matching
/// arity and every variable lies in 1..vars.
void validate_term(const Term& t, const Signature& sig, std::size_t vars);

struct AtomicFormula {
  Term lhs;
  Term rhs;

  friend bool operator==(const AtomicFormula&, const AtomicFormula&) = default;
};

/// A duplicate-free ordered list of atomic formulas over x1..x_vars.
class EquationSystem {
 public:
  explicit EquationSystem(std::size_t vars = 1) : vars_(vars) {}

  /// Appends unless a structurally identical formula is already present.
  /// Returns whether the formula was added.
  bool add(AtomicFormula f);

  std::size_t vars() const noexcept { return vars_; }
  std::size_t size() const noexcept { return formulas_.size(); }
  bool empty() const noexcept { return formulas_.empty(); }
  std::span<const AtomicFormula> formulas() const noexcept { return formulas_; }
  const AtomicFormula& operator[](std::size_t i) const { return formulas_[i]; }

 private:
  std::size_t vars_;
  std::vector<AtomicFormula> formulas_;
};

// Text forms. Grammar: `op <name> <arity>` per signature line; terms are
// prefix `f(t1,...,tk)`, constants bare, variables `x1..xn`; equations are
// `<term> = <term>`; `#` comments to end of line.

Signature parse_signature(std::string_view text);
Term parse_term(std::string_view text, const Signature& sig, std::size_t vars);
AtomicFormula parse_formula(std::string_view text, const Signature& sig, std::size_t vars);
EquationSystem parse_system(std::string_view text, const Signature& sig, std::size_t vars);

std::string format_term(const Term& t);
std::string format_formula(const AtomicFormula& f);

/// Drops a trailing `#` comment and a trailing '\r'.
std::string_view strip_comment(std::string_view line) noexcept;

}  // namespace uag
