#include "uag/terms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "uag/error.hpp"

namespace uag {

bool is_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  const auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

bool is_variable_name(std::string_view s) noexcept {
  if (s.size() < 2 || s.front() != 'x') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

void Signature::add(std::string name, std::size_t arity) {
  if (!is_identifier(name)) throw SemanticError("invalid operation name '" + name + "'");
  if (is_variable_name(name)) throw SemanticError("operation name '" + name + "' is reserved for variables");
  if (index_.contains(name)) throw SemanticError("duplicate operation name '" + name + "'");
  index_.emplace(name, ops_.size());
  ops_.push_back({std::move(name), arity});
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Signature::max_arity() const noexcept {
  std::size_t best = 0;
  for (const auto& op : ops_) best = std::max(best, op.arity);
  return best;
}

Term Term::variable(std::size_t index) {
  if (index == 0) throw SemanticError("variable indices start at 1");
  Term t;
  t.variable_ = index;
  return t;
}

Term Term::operation(std::string op, std::vector<Term> children) {
  Term t;
  t.op_ = std::move(op);
  t.children_ = std::move(children);
  return t;
}

std::size_t Term::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth() + 1);
  return d;
}

std::size_t Term::max_variable() const noexcept {
  std::size_t v = variable_;
  for (const auto& c : children_) v = std::max(v, c.max_variable());
  return v;
}

void validate_term(const Term& t, const Signature& sig, std::size_t vars) {
  if (t.is_variable()) {
    if (t.variable_index() > vars)
      throw SemanticError("variable x" + std::to_string(t.variable_index()) + " outside x1..x" + std::to_string(vars));
    return;
  }
  const auto op = sig.find(t.op());
  if (!op) throw SemanticError("unknown symbol '" + t.op() + "'");
  if (sig[*op].arity != t.children().size())
    throw SemanticError("arity mismatch for '" + t.op() + "': expected " + std::to_string(sig[*op].arity) + ", got " +
                        std::to_string(t.children().size()));
  for (const auto& c : t.children()) validate_term(c, sig, vars);
}

bool EquationSystem::add(AtomicFormula f) {
  if (std::find(formulas_.begin(), formulas_.end(), f) != formulas_.end()) return false;
  formulas_.push_back(std::move(f));
  return true;
}

std::string_view strip_comment(std::string_view line) noexcept {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  return line;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Recursive-descent parser over a single line. Columns are 1-based.
class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig, std::size_t vars) : text_(text), sig_(sig), vars_(vars) {}

  Term parse_whole() {
    Term t = parse();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "' after term");
    return t;
  }

  Term parse() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const auto name = text_.substr(start, pos_ - start);
    if (name.empty()) {
      if (pos_ >= text_.size()) fail("expected a term, found end of input");
      fail("expected a term, found '" + std::string(1, text_[pos_]) + "'");
    }
    if (!is_identifier(name)) fail("malformed symbol '" + std::string(name) + "'", start);

    skip_space();
    const bool has_args = pos_ < text_.size() && text_[pos_] == '(';

    if (is_variable_name(name)) {
      if (has_args) fail("variable '" + std::string(name) + "' cannot take arguments", start);
      std::size_t index = 0;
      const auto digits = name.substr(1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
      if (ec != std::errc() || index == 0 || index > vars_)
        semantic_fail("variable '" + std::string(name) + "' outside x1..x" + std::to_string(vars_), start);
      return Term::variable(index);
    }

    const auto op = sig_.find(name);
    if (!op) semantic_fail("unknown symbol '" + std::string(name) + "'", start);
    const std::size_t arity = sig_[*op].arity;

    std::vector<Term> children;
    if (has_args && arity == 0) fail("constant '" + std::string(name) + "' is written without parentheses", start);
    if (has_args) {
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          children.push_back(parse());
          skip_space();
          if (pos_ >= text_.size()) fail("unbalanced parentheses: missing ')'");
          if (text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')', found '" + std::string(1, text_[pos_]) + "'");
        }
      }
    }
    if (children.size() != arity)
      semantic_fail("arity mismatch for '" + std::string(name) + "': expected " + std::to_string(arity) + ", got " +
               std::to_string(children.size()),
           start);
    return Term::operation(std::string(name), std::move(children));
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, 0, at + 1); }
  [[noreturn]] void semantic_fail(const std::string& msg, std::size_t at) const {
    throw SemanticError(msg, 0, at + 1);
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t vars_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

Signature parse_signature(std::string_view text) {
  Signature sig;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = trim(strip_comment(lines[ln]));
    if (line.empty()) continue;

    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      const std::size_t s = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (i > s) tokens.push_back(line.substr(s, i - s));
    }
    if (tokens.size() != 3 || tokens[0] != "op")
      throw ParseError("expected 'op <name> <arity>'", ln + 1, 1);
    if (!is_identifier(tokens[1])) throw ParseError("malformed operation name '" + std::string(tokens[1]) + "'", ln + 1, 1);
    if (!tokens[2].empty() && tokens[2].front() == '-') throw ParseError("negative arity", ln + 1, 1);
    std::size_t arity = 0;
    const auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), arity);
    if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size())
      throw ParseError("malformed arity '" + std::string(tokens[2]) + "'", ln + 1, 1);
    try {
      sig.add(std::string(tokens[1]), arity);
    } catch (const SemanticError& e) {
      throw ParseError(e.what(), ln + 1, 1);
    }
  }
  return sig;
}

Term parse_term(std::string_view text, const Signature& sig, std::size_t vars) {
  if (vars == 0) throw SemanticError("variable count must be at least 1");
  return TermParser(text, sig, vars).parse_whole();
}

AtomicFormula parse_formula(std::string_view text, const Signature& sig, std::size_t vars) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError("expected '<term> = <term>'", 0, 1);
  if (text.find('=', eq + 1) != std::string_view::npos) throw ParseError("more than one '='", 0, text.find('=', eq + 1) + 1);
  Term lhs = parse_term(text.substr(0, eq), sig, vars);
  Term rhs;
  try {
    rhs = parse_term(text.substr(eq + 1), sig, vars);
  } catch (const ParseError& e) {
    throw e.at_line(0, eq + 1);
  } catch (const SemanticError& e) {
    throw e.at_line(0, eq + 1);
  }
  return {std::move(lhs), std::move(rhs)};
}

EquationSystem parse_system(std::string_view text, const Signature& sig, std::size_t vars) {
  EquationSystem sys(vars);
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = strip_comment(lines[ln]);
    if (trim(line).empty()) continue;
    try {
      sys.add(parse_formula(line, sig, vars));
    } catch (const ParseError& e) {
      throw e.at_line(ln + 1);
    } catch (const SemanticError& e) {
      throw e.at_line(ln + 1);
    }
  }
  return sys;
}

std::string format_term(const Term& t) {
  if (t.is_variable()) return "x" + std::to_string(t.variable_index());
  std::string out = t.op();
  if (t.children().empty()) return out;
  out += '(';
  bool first = true;
  for (const auto& c : t.children()) {
    if (!first) out += ',';
    first = false;
    out += format_term(c);
  }
  out += ')';
  return out;
}

std::string format_formula(const AtomicFormula& f) { return format_term(f.lhs) + " = " + format_term(f.rhs); }

}  // namespace uag
