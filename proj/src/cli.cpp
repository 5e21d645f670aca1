#include "uag/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "uag/budget.hpp"
#include "uag/chains.hpp"
#include "uag/error.hpp"
#include "uag/free_algebra.hpp"
#include "uag/geometry.hpp"
#include "uag/model_file.hpp"
#include "uag/products.hpp"
#include "uag/topology.hpp"

namespace uag::cli {

namespace {

using ojson = nlohmann::ordered_json;

// --- rendering ----------------------------------------------------------------

std::string scalar(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat(const ojson& v) {
  if (!v.is_array()) return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const ojson& x) { return !x.is_array() && !x.is_object(); });
}

void render_text(const ojson& v, std::ostream& out, std::size_t indent);

void render_entry(const std::string& key, const ojson& v, std::ostream& out, std::size_t indent) {
  const std::string pad(indent, ' ');
  if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
    out << pad << key << ": |\n";
    std::istringstream lines(v.get<std::string>());
    for (std::string line; std::getline(lines, line);) out << pad << "  " << line << '\n';
    return;
  }
  if (!v.is_array() && !v.is_object()) {
    out << pad << key << ": " << scalar(v) << '\n';
    return;
  }
  if (v.empty()) {
    out << pad << key << ": " << (v.is_array() ? "[]" : "{}") << '\n';
    return;
  }
  if (v.is_array() && is_flat(v)) {
    out << pad << key << ": [";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
    out << "]\n";
    return;
  }
  out << pad << key << ":\n";
  render_text(v, out, indent + 2);
}

void render_text(const ojson& v, std::ostream& out, std::size_t indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) render_entry(k, x, out, indent);
    return;
  }
  if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        out << pad << "-\n";
        render_text(x, out, indent + 2);
      } else if (x.is_array()) {
        out << pad << "- [";
        for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << scalar(x[i]);
        out << "]\n";
      } else {
        out << pad << "- " << scalar(x) << '\n';
      }
    }
    return;
  }
  out << pad << scalar(v) << '\n';
}

void emit(const ojson& doc, bool as_json, std::ostream& out) {
  if (as_json) {
    // nlohmann::json keeps object keys sorted.
    const nlohmann::json sorted = nlohmann::json::parse(doc.dump());
    out << sorted.dump(2) << '\n';
  } else {
    render_text(doc, out, 0);
  }
}

// --- shared pieces ------------------------------------------------------------

ojson points_json(const PointSet& s) {
  ojson arr = ojson::array();
  for (const auto code : s.codes()) arr.push_back(format_point(s.point(code)));
  return arr;
}

ojson classes_json(const FreeAlgebra& f, const Congruence& k) {
  ojson arr = ojson::array();
  for (const auto& cls : k.classes()) {
    ojson c = ojson::array();
    for (const auto e : cls) c.push_back(format_term(f.witness(e)));
    arr.push_back(std::move(c));
  }
  return arr;
}

/// Nontrivial formula classes (f < g) in a pair matrix, as "p = q".
ojson equations_json(const FreeAlgebra& f, const BitSet& pairs) {
  ojson arr = ojson::array();
  const std::size_t k = f.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (pairs.test(a * k + b)) arr.push_back(format_term(f.witness(a)) + " = " + format_term(f.witness(b)));
  return arr;
}

ojson table_json(const FiniteAlgebra& a) {
  ojson tables = ojson::object();
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    ojson t = ojson::array();
    for (const auto v : a.table(op)) t.push_back(v);
    tables[a.signature()[op].name] = std::move(t);
  }
  return tables;
}

ojson certificate_json(const ChainCertificate& cert) {
  ojson doc;
  doc["kind"] = to_string(cert.kind);
  doc["vars"] = cert.vars;
  doc["exhaustive"] = cert.exhaustive;
  doc["seed"] = cert.seed;
  ojson conds = ojson::array();
  for (const auto& c : cert.conditions) {
    ojson cj;
    cj["id"] = c.id;
    cj["statement"] = c.statement;
    cj["satisfied"] = c.satisfied;
    ojson w = ojson::object();
    for (const auto& [k, v] : c.witness) w[k] = v;
    cj["witness"] = std::move(w);
    conds.push_back(std::move(cj));
  }
  doc["conditions"] = std::move(conds);
  doc["consistent"] = cert.consistent;
  doc["verdict"] = cert.verdict;
  return doc;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ParseError("malformed index list '" + text + "'", 0, 0);
    }
  }
  return out;
}

struct Options {
  std::string file;
  std::string algebra;
  std::string system;
  std::string points;
  std::size_t vars = 1;
  bool json = false;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  bool allow_trivial = false;
  std::string kind;
  std::string which;
  std::string chain;
  std::size_t index = 2;
  std::optional<std::size_t> principal_at;
  std::string principal_on;
  bool nonprincipal = false;
  std::string other;
};

class Session {
 public:
  Session(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  const ModelFile& model() {
    if (!model_) {
      if (opt_.file.empty()) throw SemanticError("no model file given (use -f)");
      try {
        model_ = load_model(opt_.file);
      } catch (const ParseError& e) {
        throw ParseError(opt_.file + ":" + e.what(), 0, 0);
      } catch (const SemanticError& e) {
        if (e.line() == 0) throw;
        throw SemanticError(opt_.file + ":" + e.what());
      }
    }
    return *model_;
  }

  const FiniteAlgebra& algebra() {
    const auto& m = model();
    if (opt_.algebra.empty()) {
      if (m.algebra_order.size() != 1) throw SemanticError("the model file has several algebras; choose one with --algebra");
      return m.algebra(m.algebra_order.front());
    }
    return m.algebra(opt_.algebra);
  }

  ojson header(const std::string& command) {
    ojson doc;
    doc["command"] = command;
    doc["algebra"] = algebra().name();
    return doc;
  }

  void emit(const ojson& doc) { cli::emit(doc, opt_.json, out_); }

  CheckOptions check_options() const { return {opt_.seed, opt_.samples}; }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::optional<ModelFile> model_;
};

// --- commands -------------------------------------------------------------------

int cmd_solve(Session& s, const Options& o) {
  const auto& sys = s.model().system(o.system);
  const auto sol = solution_set(s.algebra(), sys);
  auto doc = s.header("solve");
  doc["system"] = o.system;
  doc["vars"] = sys.vars();
  doc["count"] = sol.count();
  doc["solutions"] = points_json(sol);
  s.emit(doc);
  return ok;
}

int cmd_radical(Session& s, const Options& o) {
  const auto& a = s.algebra();
  auto doc = s.header("radical");
  std::optional<RadicalIdeal> rad;
  std::optional<FreeAlgebra> f;
  if (!o.system.empty()) {
    const auto& sys = s.model().system(o.system);
    f.emplace(a, sys.vars());
    rad = radical_of_system(*f, sys);
    doc["system"] = o.system;
  } else if (!o.points.empty()) {
    const auto pts = s.model().points(o.points, a);
    f.emplace(a, pts.dim());
    rad = radical_of_points(*f, pts);
    doc["points"] = o.points;
  } else {
    throw SemanticError("radical needs --system or --points");
  }
  doc["vars"] = f->vars();
  doc["free_algebra_size"] = f->size();
  doc["defining_points"] = points_json(rad->defining_points);
  doc["algebraic_set"] = points_json(rad->canonical_set);
  doc["class_count"] = rad->kernel.class_count();
  doc["classes"] = classes_json(*f, rad->kernel);
  s.emit(doc);
  return ok;
}

int cmd_closure(Session& s, const Options& o) {
  const auto& a = s.algebra();
  const auto pts = s.model().points(o.points, a);
  const FreeAlgebra f(a, pts.dim());
  const auto closure = algebraic_closure(f, pts);
  auto doc = s.header("closure");
  doc["points"] = o.points;
  doc["input"] = points_json(pts);
  doc["closure"] = points_json(closure);
  doc["algebraic"] = closure == pts;
  s.emit(doc);
  return ok;
}

int cmd_coord(Session& s, const Options& o) {
  const auto& a = s.algebra();
  const auto pts = s.model().points(o.points, a);
  const FreeAlgebra f(a, pts.dim());
  const auto coord = coordinate_algebra(f, pts, {o.allow_trivial});
  const auto rad = point_kernel(f, pts);
  auto doc = s.header("coord");
  doc["points"] = o.points;
  doc["input"] = points_json(pts);
  doc["gamma_size"] = coord.gamma.size();
  doc["tY_size"] = coord.tY.size();
  ojson elems = ojson::array();
  const auto classes = rad.classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    ojson e;
    e["class"] = c;
    e["witness"] = format_term(f.witness(classes[c].front()));
    e["image"] = coord.iso(static_cast<Element>(c));
    elems.push_back(std::move(e));
  }
  doc["elements"] = std::move(elems);
  doc["gamma_tables"] = table_json(coord.gamma);
  doc["isomorphism_verified"] = true;
  s.emit(doc);
  return ok;
}

int cmd_free(Session& s, const Options& o) {
  const FreeAlgebra f(s.algebra(), o.vars);
  auto doc = s.header("free");
  doc["vars"] = o.vars;
  doc["size"] = f.size();
  if (const auto bound = f.function_space_bound())
    doc["function_space_bound"] = *bound;
  else
    doc["function_space_bound"] = "overflow";
  doc["saturates_bound"] = f.saturates_bound();
  ojson elems = ojson::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    ojson e;
    e["index"] = i;
    e["witness"] = format_term(f.witness(i));
    ojson vals = ojson::array();
    for (const auto v : f.values(i)) vals.push_back(v);
    e["values"] = std::move(vals);
    elems.push_back(std::move(e));
  }
  doc["elements"] = std::move(elems);
  s.emit(doc);
  return ok;
}

ojson radical_topology_json(const FreeAlgebra& f, const RadicalTopology& t) {
  ojson doc;
  ojson rads = ojson::array();
  for (std::size_t i = 0; i < t.radicals().size(); ++i) {
    const auto& r = t.radicals()[i];
    ojson rj;
    rj["id"] = "R" + std::to_string(i);
    rj["algebraic_set"] = points_json(r.canonical_set);
    rj["classes"] = classes_json(f, r.kernel);
    rads.push_back(std::move(rj));
  }
  doc["radical_ideals"] = std::move(rads);
  doc["b1_size"] = t.family().b1.size();
  doc["b2_size"] = t.family().b2.size();
  doc["b2_equals_b1"] = t.family().equal;
  ojson closed = ojson::array();
  for (std::size_t i = 0; i < t.closed_sets().size(); ++i) {
    const auto& c = t.closed_sets()[i];
    ojson cj;
    cj["index"] = i;
    cj["provenance"] = c.provenance()->to_string('R');
    cj["irreducible"] = is_irreducible(c, t.closed_sets());
    cj["equations"] = equations_json(f, c.pairs());
    closed.push_back(std::move(cj));
  }
  doc["closed_sets"] = std::move(closed);
  doc["lattice_height"] = t.closed_height();
  return doc;
}

ojson zariski_json(const RadicalTopology& t) {
  ojson doc;
  const auto leaves = algebraic_sets(t.radicals());
  ojson alg = ojson::array();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    ojson a;
    a["id"] = "Y" + std::to_string(i);
    a["points"] = points_json(leaves[i]);
    alg.push_back(std::move(a));
  }
  doc["algebraic_sets"] = std::move(alg);
  ojson closed = ojson::array();
  for (const auto& z : enumerate_zariski_closed(t.radicals())) {
    ojson c;
    c["points"] = points_json(z.points);
    c["provenance"] = z.provenance->to_string('Y');
    closed.push_back(std::move(c));
  }
  doc["closed_sets"] = std::move(closed);
  return doc;
}

int cmd_topology(Session& s, const Options& o) {
  const FreeAlgebra f(s.algebra(), o.vars);
  const RadicalTopology t(f);
  auto doc = s.header("topology");
  doc["vars"] = o.vars;
  const std::string kind = o.kind.empty() ? "both" : o.kind;
  if (kind == "radical" || kind == "both") doc["radical"] = radical_topology_json(f, t);
  if (kind == "zariski" || kind == "both") doc["zariski"] = zariski_json(t);
  s.emit(doc);
  return ok;
}

int cmd_decompose(Session& s, const Options& o) {
  const auto& a = s.algebra();
  std::size_t vars = o.vars;
  std::optional<PointSet> only;
  if (!o.points.empty()) {
    only = s.model().points(o.points, a);
    vars = only->dim();
  }
  const FreeAlgebra f(a, vars);
  const RadicalTopology t(f);
  auto doc = s.header("decompose");
  doc["vars"] = vars;

  auto large_json = [&](const PointSet& y) {
    ojson j;
    j["algebraic_set"] = points_json(y);
    ojson comps = ojson::array();
    for (const auto& yi : large_decomposition(t, y)) comps.push_back(points_json(yi));
    j["large_components"] = std::move(comps);
    return j;
  };

  if (only) {
    doc["points"] = o.points;
    doc["decomposition"] = large_json(*only);
    s.emit(doc);
    return ok;
  }

  ojson closed = ojson::array();
  for (std::size_t i = 0; i < t.closed_sets().size(); ++i) {
    const auto& c = t.closed_sets()[i];
    ojson cj;
    cj["index"] = i;
    cj["provenance"] = c.provenance()->to_string('R');
    ojson comps = ojson::array();
    for (const auto& d : irreducible_components(c, t.closed_sets()))
      comps.push_back(*t.find_closed(d.pairs()));
    cj["irreducible_components"] = std::move(comps);
    closed.push_back(std::move(cj));
  }
  doc["closed_sets"] = std::move(closed);
  ojson large = ojson::array();
  for (const auto& y : algebraic_sets(t.radicals())) large.push_back(large_json(y));
  doc["algebraic_sets"] = std::move(large);
  s.emit(doc);
  return ok;
}

int cmd_konig(Session& s, const Options& o) {
  const FreeAlgebra f(s.algebra(), o.vars);
  const RadicalTopology t(f);
  std::vector<RadicalClosedSet> chain;
  ojson chain_ids = ojson::array();
  if (o.chain.empty()) {
    for (const auto r : t.longest_radical_chain()) {
      chain.push_back(t.radical_set(r));
      chain_ids.push_back(*t.find_closed(chain.back().pairs()));
    }
  } else {
    for (const auto i : parse_index_list(o.chain)) {
      if (i >= t.closed_sets().size())
        throw SemanticError("closed-set index " + std::to_string(i) + " out of range (see 'uag topology')");
      chain.push_back(t.closed_sets()[i]);
      chain_ids.push_back(i);
    }
  }
  const auto trace = konig_trace(t, chain);
  auto doc = s.header("konig-trace");
  doc["vars"] = o.vars;
  doc["chain"] = std::move(chain_ids);
  ojson nodes = ojson::array();
  for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
    const auto& n = trace.nodes[i];
    ojson nj;
    nj["id"] = i;
    nj["radical"] = "R" + std::to_string(n.radical);
    nj["level"] = n.level + 1;
    if (n.parent)
      nj["parent"] = *n.parent;
    else
      nj["parent"] = nullptr;
    ojson kids = ojson::array();
    for (const auto c : n.children) kids.push_back(c);
    nj["children"] = std::move(kids);
    nodes.push_back(std::move(nj));
  }
  doc["nodes"] = std::move(nodes);
  doc["total_nodes"] = trace.total_nodes();
  doc["max_branching"] = trace.max_branching;
  doc["max_path_length"] = trace.max_path_length;
  doc["radical_lattice_height"] = t.radical_height();
  s.emit(doc);
  return ok;
}

int cmd_check(Session& s, const Options& o) {
  ChainCertificate cert;
  if (o.which == "artinian")
    cert = certify_artinian(s.algebra(), o.vars, s.check_options());
  else if (o.which == "noetherian")
    cert = certify_noetherian(s.algebra(), o.vars, s.check_options());
  else
    throw SemanticError("check expects 'artinian' or 'noetherian'");
  auto doc = s.header("check");
  doc["certificate"] = certificate_json(cert);
  s.emit(doc);
  return cert.verdict ? ok : internal_error;
}

FilterOnFiniteSet filter_from(const Options& o) {
  if (o.nonprincipal) reject_nonprincipal("a non-principal ultrafilter");
  if (o.principal_at) return FilterOnFiniteSet::principal_at(o.index, *o.principal_at);
  if (!o.principal_on.empty()) {
    std::uint32_t mask = 0;
    for (const auto i : parse_index_list(o.principal_on)) {
      if (i >= o.index) throw SemanticError("index " + std::to_string(i) + " outside I");
      mask |= std::uint32_t{1} << i;
    }
    return FilterOnFiniteSet::principal(o.index, mask);
  }
  return FilterOnFiniteSet::principal(o.index, static_cast<std::uint32_t>((std::uint64_t{1} << o.index) - 1));
}

int cmd_product(Session& s, const Options& o) {
  const auto& a = s.algebra();
  const auto filter = filter_from(o);
  const auto prod = reduced_product(a, filter);
  ojson gen = ojson::array();
  for (std::size_t i = 0; i < filter.index_size(); ++i)
    if ((filter.generator() >> i) & 1u) gen.push_back(i);

  const auto generator_size = static_cast<std::size_t>(std::popcount(filter.generator()));
  const auto power = power_algebra(a, generator_size);
  const auto iso = find_isomorphism(power, prod.algebra);

  auto doc = s.header("product");
  doc["index"] = filter.index_size();
  doc["filter_generator"] = std::move(gen);
  doc["ultrafilter"] = filter.is_ultrafilter();
  doc["size"] = prod.algebra.size();
  doc["isomorphic_to_power"] = generator_size;
  doc["isomorphism_found"] = iso.has_value();
  doc["model"] = format_algebra_block(prod.algebra, a.name() + "_product");
  s.emit(doc);
  return iso ? ok : internal_error;
}

int cmd_verify(Session& s, const Options& o) {
  const auto& a = s.algebra();
  auto doc = s.header("verify");
  doc["vars"] = o.vars;
  bool all = true;
  if (o.which == "theorem3") {
    ojson results = ojson::array();
    auto compare = [&](const FiniteAlgebra& b, ojson r) {
      const auto cmp = verify_radical_topology_equal(a, b, o.vars);
      ojson iso = ojson::array();
      for (const auto v : cmp.isomorphism.map) iso.push_back(v);
      r["isomorphism"] = std::move(iso);
      r["radicals"] = cmp.radicals_a;
      r["equations_checked"] = cmp.equations_checked;
      r["radical_topology_equal"] = cmp.equal;
      all = all && cmp.equal;
      results.push_back(std::move(r));
    };
    if (!o.other.empty()) {
      ojson r;
      r["other"] = o.other;
      compare(s.model().algebra(o.other), std::move(r));
    } else {
      for (const auto& u : FilterOnFiniteSet::all_ultrafilters(o.index)) {
        ojson r;
        r["index"] = o.index;
        r["principal_at"] = std::countr_zero(u.generator());
        compare(reduced_product(a, u).algebra, std::move(r));
      }
    }
    doc["property"] = "radical topology of an ultrapower";
    doc["results"] = std::move(results);
    doc["note"] = "elementary equivalence checked as isomorphism (valid for finite structures)";
  } else if (o.which == "theorem4") {
    const auto report = verify_preservation(a, o.vars, s.check_options());
    ojson entries = ojson::array();
    for (const auto& e : report.entries) {
      ojson ej;
      ej["kind"] = e.kind;
      ej["label"] = e.label;
      ej["size"] = e.size;
      ej["certified"] = e.certified;
      ej["descending_radical"] = e.descending_radical;
      ej["ascending_algebraic"] = e.ascending_algebraic;
      entries.push_back(std::move(ej));
    }
    doc["property"] = "subalgebras, coordinate algebras and ultrapowers stay equationally Artinian";
    doc["entries"] = std::move(entries);
    all = report.all_certified;
  } else {
    throw SemanticError("verify expects 'theorem3' or 'theorem4'");
  }
  doc["verdict"] = all;
  s.emit(doc);
  return all ? ok : internal_error;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::parse:
      return parse_error;
    case ErrorKind::semantic:
      return semantic_error;
    case ErrorKind::budget:
      return budget_error;
    case ErrorKind::internal:
      return internal_error;
  }
  return internal_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Universal algebraic geometry over finite algebras", "uag"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-f,--file", o.file, "Model file");
  app.add_option("--algebra", o.algebra, "Algebra name (optional when the file has one)");
  app.add_flag("--json", o.json, "Machine-readable output with sorted keys");
  app.add_option("--seed", o.seed, "Seed for sampled checks");

  auto* solve = app.add_subcommand("solve", "Solution set V_A(S)");
  solve->add_option("--system", o.system, "System name")->required();
  auto* radical = app.add_subcommand("radical", "Radical ideal of a system or a point set");
  radical->add_option("--system", o.system, "System name");
  radical->add_option("--points", o.points, "Points name");
  auto* closure = app.add_subcommand("closure", "Algebraic closure V(Rad(E))");
  closure->add_option("--points", o.points, "Points name")->required();
  auto* coord = app.add_subcommand("coord", "Coordinate algebra Gamma(Y) and its isomorphism to T(Y)");
  coord->add_option("--points", o.points, "Points name")->required();
  coord->add_flag("--allow-trivial", o.allow_trivial, "Map Y = {} to the one-element algebra");
  auto* free = app.add_subcommand("free", "Free algebra of term functions");
  free->add_option("--vars", o.vars, "Variable count")->check(CLI::PositiveNumber);
  auto* decompose = app.add_subcommand("decompose", "Irreducible and large decompositions");
  decompose->add_option("--vars", o.vars, "Variable count")->check(CLI::PositiveNumber);
  decompose->add_option("--points", o.points, "Decompose only this algebraic set");
  auto* topology = app.add_subcommand("topology", "Radical and Zariski closed sets");
  topology->add_option("--vars", o.vars, "Variable count")->check(CLI::PositiveNumber);
  topology->add_option("--kind", o.kind, "radical, zariski or both")->check(CLI::IsMember({"radical", "zariski", "both"}));
  auto* konig = app.add_subcommand("konig-trace", "Konig tree of a strictly descending chain");
  konig->add_option("--vars", o.vars, "Variable count")->check(CLI::PositiveNumber);
  konig->add_option("--chain", o.chain, "Comma-separated closed-set indices (default: longest radical chain)");
  auto* check = app.add_subcommand("check", "Chain-condition certificate");
  check->add_option("kind", o.which, "artinian or noetherian")->required()->check(CLI::IsMember({"artinian", "noetherian"}));
  check->add_option("--vars", o.vars, "Variable count")->check(CLI::PositiveNumber);
  check->add_option("--samples", o.samples, "Sample count for non-exhaustive checks");
  auto* product = app.add_subcommand("product", "Reduced product over a filter on a finite index set");
  product->add_option("--index", o.index, "Index set size |I|")->check(CLI::PositiveNumber);
  auto* at = product->add_option("--principal-at", o.principal_at, "Principal ultrafilter at i");
  auto* on = product->add_option("--principal-on", o.principal_on, "Principal filter on J (comma-separated)");
  auto* np = product->add_flag("--nonprincipal", o.nonprincipal, "Request a non-principal ultrafilter (rejected)");
  at->excludes(on)->excludes(np);
  on->excludes(np);
  auto* verify = app.add_subcommand("verify", "Finite-scale preservation checks");
  verify->add_option("theorem", o.which, "theorem3 or theorem4")->required()->check(CLI::IsMember({"theorem3", "theorem4"}));
  verify->add_option("--vars", o.vars, "Variable count")->check(CLI::PositiveNumber);
  verify->add_option("--index", o.index, "Index set size for ultrapowers")->check(CLI::PositiveNumber);
  verify->add_option("--other", o.other, "Compare with this algebra instead of ultrapowers");
  verify->add_option("--samples", o.samples, "Sample count for non-exhaustive checks");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : parse_error;
  }

  std::optional<budget::ScopedLimit> guard;
  try {
    if (const char* env = std::getenv("UAG_BUDGET")) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(env, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || env[used] != '\0') throw ParseError(std::string("malformed UAG_BUDGET '") + env + "'", 0, 0);
      guard.emplace(static_cast<std::size_t>(v));
    }

    Session session(o, out);
    if (solve->parsed()) return cmd_solve(session, o);
    if (radical->parsed()) return cmd_radical(session, o);
    if (closure->parsed()) return cmd_closure(session, o);
    if (coord->parsed()) return cmd_coord(session, o);
    if (free->parsed()) return cmd_free(session, o);
    if (decompose->parsed()) return cmd_decompose(session, o);
    if (topology->parsed()) return cmd_topology(session, o);
    if (konig->parsed()) return cmd_konig(session, o);
    if (check->parsed()) return cmd_check(session, o);
    if (product->parsed()) return cmd_product(session, o);
    if (verify->parsed()) return cmd_verify(session, o);
    throw InternalError("no command dispatched");
  } catch (const Error& e) {
    err << "uag: error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "uag: internal error: " << e.what() << '\n';
    return internal_error;
  }
}

}  // namespace uag::cli
