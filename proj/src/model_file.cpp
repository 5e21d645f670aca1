#include "uag/model_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "uag/budget.hpp"
#include "uag/error.hpp"

namespace uag {

const FiniteAlgebra& ModelFile::algebra(const std::string& name) const {
  const auto it = algebras.find(name);
  if (it == algebras.end()) throw SemanticError("undefined algebra '" + name + "'");
  return it->second;
}

const EquationSystem& ModelFile::system(const std::string& name) const {
  const auto it = systems.find(name);
  if (it == systems.end()) throw SemanticError("undefined system '" + name + "'");
  return it->second;
}

PointSet ModelFile::points(const std::string& name, const FiniteAlgebra& a) const {
  const auto it = point_blocks.find(name);
  if (it == point_blocks.end()) throw SemanticError("undefined points '" + name + "'");
  auto out = PointSet::empty(a.size(), it->second.dim);
  for (const auto& t : it->second.tuples) out.insert(t);
  return out;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t s = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > s) out.push_back({line.substr(s, i - s), s + 1});
  }
  return out;
}

std::optional<std::size_t> to_number(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

enum class Block { none, signature, algebra, system, points };

struct PendingAlgebra {
  std::string name;
  std::size_t line = 0;
  std::optional<std::size_t> size;
  // per op: (row args, value, line)
  std::vector<std::vector<std::pair<std::vector<std::size_t>, std::size_t>>> entries;
  std::vector<std::size_t> entry_lines;
};

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : text_(text) {}

  ModelFile run() {
    std::size_t start = 0;
    std::size_t ln = 0;
    while (start <= text_.size()) {
      auto nl = text_.find('\n', start);
      if (nl == std::string_view::npos) nl = text_.size();
      ++ln;
      line_no_ = ln;
      handle(text_.substr(start, nl - start));
      start = nl + 1;
    }
    finish_algebra();
    return std::move(model_);
  }

 private:
  [[noreturn]] void parse_fail(const std::string& msg, std::size_t column = 1) const {
    throw ParseError(msg, line_no_, column);
  }
  [[noreturn]] void semantic_fail(const std::string& msg) const {
    throw SemanticError(msg, line_no_, 0);
  }

  void require_signature() const {
    if (!have_signature_) semantic_fail("signature must be declared before use");
  }

  void require_fresh_name(const Token& name, bool taken) const {
    if (!is_identifier(name.text)) parse_fail("malformed name '" + std::string(name.text) + "'", name.column);
    if (taken) semantic_fail("duplicate name '" + std::string(name.text) + "'");
  }

  void handle(std::string_view raw) {
    const auto line = strip_comment(raw);
    const auto tokens = tokenize(line);
    if (tokens.empty()) return;
    const auto head = tokens[0].text;

    if (head == "signature") {
      if (tokens.size() != 1) parse_fail("'signature' takes no arguments", tokens[1].column);
      if (have_signature_) semantic_fail("only one signature per file");
      finish_algebra();
      have_signature_ = true;
      block_ = Block::signature;
      return;
    }
    if (head == "algebra") {
      if (tokens.size() != 2) parse_fail("expected 'algebra <name>'");
      require_signature();
      finish_algebra();
      require_fresh_name(tokens[1], model_.algebras.contains(std::string(tokens[1].text)) ||
                                        (pending_ && pending_->name == tokens[1].text));
      pending_.emplace();
      pending_->name = std::string(tokens[1].text);
      pending_->line = line_no_;
      pending_->entries.resize(model_.signature.size());
      pending_->entry_lines.assign(model_.signature.size(), 0);
      block_ = Block::algebra;
      return;
    }
    if (head == "system" || head == "points") {
      const bool is_system = head == "system";
      const char* kw = is_system ? "vars" : "dim";
      if (tokens.size() != 4 || tokens[2].text != kw)
        parse_fail(std::string("expected '") + std::string(head) + " <name> " + kw + " <n>'");
      require_signature();
      finish_algebra();
      const auto n = to_number(tokens[3].text);
      if (!n || *n == 0) parse_fail("expected a positive count", tokens[3].column);
      const std::string name(tokens[1].text);
      if (is_system) {
        require_fresh_name(tokens[1], model_.systems.contains(name));
        model_.systems.emplace(name, EquationSystem(*n));
        block_ = Block::system;
      } else {
        require_fresh_name(tokens[1], model_.point_blocks.contains(name));
        model_.point_blocks.emplace(name, ModelFile::Points{*n, {}});
        block_ = Block::points;
      }
      current_ = name;
      return;
    }

    switch (block_) {
      case Block::none:
        parse_fail("entry outside of any block");
      case Block::signature:
        signature_entry(line, tokens);
        return;
      case Block::algebra:
        algebra_entry(line, tokens);
        return;
      case Block::system:
        system_entry(line);
        return;
      case Block::points:
        points_entry(line);
        return;
    }
  }

  void signature_entry(std::string_view line, const std::vector<Token>& tokens) {
    if (tokens.size() != 3 || tokens[0].text != "op") parse_fail("expected 'op <name> <arity>'");
    try {
      const auto one = parse_signature(line);
      model_.signature.add(one[0].name, one[0].arity);
    } catch (const ParseError& e) {
      throw e.at_line(line_no_);
    } catch (const SemanticError& e) {
      parse_fail(e.what(), tokens[1].column);
    }
  }

  void algebra_entry(std::string_view line, const std::vector<Token>& tokens) {
    auto& alg = *pending_;
    const auto head = tokens[0].text;
    if (head == "size") {
      if (tokens.size() != 2) parse_fail("expected 'size <m>'");
      const auto m = to_number(tokens[1].text);
      if (!m || *m == 0) parse_fail("expected a positive size", tokens[1].column);
      if (alg.size) semantic_fail("size declared twice");
      alg.size = *m;
      return;
    }
    if (head == "const") {
      // const <op> = <val>
      if (tokens.size() != 4 || tokens[2].text != "=") parse_fail("expected 'const <op> = <value>'");
      const auto op = lookup_op(tokens[1], 0);
      const auto v = to_number(tokens[3].text);
      if (!v) parse_fail("expected an element label", tokens[3].column);
      add_entry(op, {}, *v);
      return;
    }
    if (head == "table") {
      if (tokens.size() < 2) parse_fail("expected 'table <op>: <args>=<val> ...'");
      auto op_text = tokens[1].text;
      std::size_t first_entry = 2;
      if (op_text.size() > 1 && op_text.back() == ':') {
        op_text.remove_suffix(1);
      } else if (tokens.size() > 2 && tokens[2].text == ":") {
        first_entry = 3;
      } else {
        parse_fail("expected ':' after the operation name", tokens[1].column + op_text.size());
      }
      const auto op = lookup_op({op_text, tokens[1].column}, std::nullopt);
      const std::size_t arity = model_.signature[op].arity;
      for (std::size_t t = first_entry; t < tokens.size(); ++t) {
        const auto entry = tokens[t].text;
        const auto eq = entry.find('=');
        if (eq == std::string_view::npos) parse_fail("expected '<args>=<value>'", tokens[t].column);
        std::vector<std::size_t> args;
        auto lhs = entry.substr(0, eq);
        if (!lhs.empty()) {
          std::size_t s = 0;
          while (true) {
            const auto comma = lhs.find(',', s);
            const auto piece = lhs.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s);
            const auto a = to_number(piece);
            if (!a) parse_fail("malformed argument '" + std::string(piece) + "'", tokens[t].column + s);
            args.push_back(*a);
            if (comma == std::string_view::npos) break;
            s = comma + 1;
          }
        }
        const auto v = to_number(entry.substr(eq + 1));
        if (!v) parse_fail("malformed value", tokens[t].column + eq + 1);
        if (args.size() != arity)
          semantic_fail("arity mismatch in table of '" + model_.signature[op].name + "': entry has " +
                        std::to_string(args.size()) + " arguments, expected " + std::to_string(arity));
        add_entry(op, std::move(args), *v);
      }
      return;
    }
    (void)line;
    parse_fail("expected 'size', 'table' or 'const' in an algebra block");
  }

  std::size_t lookup_op(const Token& name, std::optional<std::size_t> want_arity) const {
    const auto op = model_.signature.find(name.text);
    if (!op) semantic_fail("unknown operation '" + std::string(name.text) + "'");
    if (want_arity && model_.signature[*op].arity != *want_arity)
      semantic_fail("'" + std::string(name.text) + "' is not a constant; use 'table'");
    return *op;
  }

  void add_entry(std::size_t op, std::vector<std::size_t> args, std::size_t value) {
    auto& rows = pending_->entries[op];
    for (const auto& r : rows)
      if (r.first == args) semantic_fail("duplicate table entry for '" + model_.signature[op].name + "'");
    rows.emplace_back(std::move(args), value);
    pending_->entry_lines[op] = line_no_;
  }

  void finish_algebra() {
    if (!pending_) return;
    auto alg = std::move(*pending_);
    pending_.reset();
    const auto& sig = model_.signature;
    const auto at = [&](const std::string& msg) {
      return SemanticError("algebra '" + alg.name + "': " + msg, alg.line, 0);
    };

    std::size_t m = alg.size.value_or(0);
    if (!alg.size) {
      for (const auto& rows : alg.entries)
        for (const auto& [args, v] : rows) {
          m = std::max(m, v + 1);
          for (const auto a : args) m = std::max(m, a + 1);
        }
      if (m == 0) throw at("cannot infer the carrier size; add 'size <m>'");
    }
    std::vector<std::vector<Element>> tables(sig.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t rows = budget::require_pow(m, sig[op].arity, "table of '" + sig[op].name + "'");
      std::vector<std::optional<Element>> slots(rows);
      for (const auto& [args, v] : alg.entries[op]) {
        if (v >= m) throw at("value " + std::to_string(v) + " outside carrier 0.." + std::to_string(m - 1));
        std::vector<Element> tuple;
        for (const auto a : args) {
          if (a >= m) throw at("argument " + std::to_string(a) + " outside carrier 0.." + std::to_string(m - 1));
          tuple.push_back(static_cast<Element>(a));
        }
        slots[encode_tuple(m, tuple)] = static_cast<Element>(v);
      }
      const auto missing = std::count(slots.begin(), slots.end(), std::nullopt);
      if (missing != 0)
        throw at("table of '" + sig[op].name + "' is missing " + std::to_string(missing) + " of " +
                 std::to_string(rows) + " entries" +
                 (alg.size ? std::string() : " (carrier size " + std::to_string(m) + " inferred from the largest label)"));
      for (const auto& s : slots) tables[op].push_back(*s);
    }
    model_.algebras.emplace(alg.name, FiniteAlgebra(sig, m, std::move(tables), alg.name));
    model_.algebra_order.push_back(alg.name);
  }

  void system_entry(std::string_view line) {
    auto& sys = model_.systems.at(current_);
    try {
      sys.add(parse_formula(line, model_.signature, sys.vars()));
    } catch (const ParseError& e) {
      throw e.at_line(line_no_);
    } catch (const SemanticError& e) {
      throw e.at_line(line_no_);
    }
  }

  void points_entry(std::string_view line) {
    auto& block = model_.point_blocks.at(current_);
    std::size_t i = 0;
    auto skip = [&] {
      while (i < line.size() && is_space(line[i])) ++i;
    };
    skip();
    if (i >= line.size() || line[i] != '(') parse_fail("expected '(a1,...,an)'", i + 1);
    ++i;
    std::vector<Element> tuple;
    while (true) {
      skip();
      const std::size_t s = i;
      while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
      const auto v = to_number(line.substr(s, i - s));
      if (!v) parse_fail("expected an element label", s + 1);
      tuple.push_back(static_cast<Element>(*v));
      skip();
      if (i < line.size() && line[i] == ',') {
        ++i;
        continue;
      }
      if (i < line.size() && line[i] == ')') {
        ++i;
        break;
      }
      parse_fail("expected ',' or ')'", i + 1);
    }
    skip();
    if (i != line.size()) parse_fail("unexpected text after the point", i + 1);
    if (tuple.size() != block.dim)
      semantic_fail("point has " + std::to_string(tuple.size()) + " coordinates, expected " + std::to_string(block.dim));
    if (std::find(block.tuples.begin(), block.tuples.end(), tuple) == block.tuples.end())
      block.tuples.push_back(std::move(tuple));
  }

  std::string_view text_;
  ModelFile model_;
  Block block_ = Block::none;
  bool have_signature_ = false;
  std::optional<PendingAlgebra> pending_;
  std::string current_;
  std::size_t line_no_ = 0;
};

}  // namespace

ModelFile parse_model(std::string_view text) { return ModelParser(text).run(); }

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SemanticError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string format_algebra_block(const FiniteAlgebra& a, const std::string& name) {
  std::string out = "algebra " + name + "\n  size " + std::to_string(a.size()) + "\n";
  const auto& sig = a.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const auto table = a.table(op);
    if (sig[op].arity == 0) {
      out += "  const " + sig[op].name + " = " + std::to_string(table[0]) + "\n";
      continue;
    }
    out += "  table " + sig[op].name + ":";
    for (std::size_t code = 0; code < table.size(); ++code) {
      const auto args = decode_tuple(a.size(), sig[op].arity, code);
      out += ' ';
      for (std::size_t j = 0; j < args.size(); ++j) out += (j ? "," : "") + std::to_string(args[j]);
      out += "=" + std::to_string(table[code]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace uag
