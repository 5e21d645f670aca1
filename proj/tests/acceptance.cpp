// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
//
// usage: acceptance <tutorial.uag> <golden-dir> [--update-golden]

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <uag/chains.hpp>
#include <uag/cli.hpp>
#include <uag/corpus.hpp>
#include <uag/products.hpp>
#include <uag/topology.hpp>

#include "support.hpp"

using namespace uag;

namespace {

/// Collects failure messages for one criterion.
class Report {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 10) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool passed() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string label(const FiniteAlgebra& a, std::size_t n) { return a.name() + " n=" + std::to_string(n); }

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Random system with `count` formulas built from witnesses of F.
EquationSystem random_system(std::mt19937_64& rng, const FreeAlgebra& f, std::size_t count) {
  EquationSystem s(f.vars());
  for (std::size_t i = 0; i < count; ++i) s.add({f.witness(rng() % f.size()), f.witness(rng() % f.size())});
  return s;
}

// 1. Galois connection laws, exhaustive over E ⊆ A^n with m^n <= 16.
void galois(Report& r) {
  std::mt19937_64 rng(1);
  const auto refs = oracle::corpus();
  for (const auto& ref : refs) {
    const auto a = support::to_library(ref);
    for (std::size_t n = 1; ipow(a.size(), n) <= 16; ++n) {
      const FreeAlgebra f(a, n);
      const std::size_t points = f.point_count();
      const std::size_t subsets = std::size_t{1} << points;
      std::vector<Congruence> rad(subsets);
      std::vector<PointSet> cl(subsets);
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        const auto e = support::from_mask(a.size(), n, mask);
        rad[mask] = point_kernel(f, e);
        cl[mask] = zero_set(f, rad[mask]);
      }
      const bool with_oracle = points <= 9;
      std::set<oracle::Fn> fns;
      std::vector<std::vector<int>> opts;
      if (with_oracle) {
        fns = oracle::term_functions(ref, static_cast<int>(n));
        opts = oracle::all_points(ref.size, static_cast<int>(n));
      }
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        const auto e = support::from_mask(a.size(), n, mask);
        std::size_t cmask = 0;
        for (const auto c : cl[mask].codes()) cmask |= std::size_t{1} << c;
        r.expect(e.is_subset_of(cl[mask]), label(a, n) + ": E within its closure");
        r.expect(cl[cmask] == cl[mask], label(a, n) + ": closure idempotent");
        r.expect(rad[cmask] == rad[mask], label(a, n) + ": Rad(E) = Rad(closure(E))");
        for (std::size_t p = 0; p < points; ++p) {
          if ((mask >> p) & 1u) continue;
          const auto bigger = mask | (std::size_t{1} << p);
          r.expect(rad[bigger].is_subset_of(rad[mask]), label(a, n) + ": Rad antitone");
          r.expect(cl[mask].is_subset_of(cl[bigger]), label(a, n) + ": closure monotone");
        }
        if (with_oracle) {
          const auto expect = oracle::zeros(oracle::radical(fns, opts, support::to_points(e)), opts);
          r.expect(support::to_points(cl[mask]) == expect, label(a, n) + ": closure matches brute force");
        }
      }
      // V(Rad(V(S))) = V(S) and antitone V on sampled systems.
      for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_system(rng, f, 1 + rng() % 4);
        const auto v = solution_set(a, s);
        r.expect(zero_set(f, point_kernel(f, v)) == v, label(a, n) + ": V(Rad(V(S))) = V(S)");
        EquationSystem more = s;
        more.add({f.witness(rng() % f.size()), f.witness(rng() % f.size())});
        r.expect(solution_set(a, more).is_subset_of(v), label(a, n) + ": V antitone");
      }
    }
  }
}

// 2. Artinian certificates at n = 1, 2.
void artinian(Report& r) {
  for (const auto& a : corpus::all())
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto cert = certify_artinian(a, n, {});
      r.expect(cert.verdict, label(a, n) + ": verdict");
      r.expect(cert.conditions.size() == 6, label(a, n) + ": six conditions");
      for (const auto& c : cert.conditions) r.expect(c.satisfied, label(a, n) + ": condition " + c.id);
      const auto& ii = cert.condition("ii").witness;
      const auto& iii = cert.condition("iii").witness;
      r.expect(ii.at(1).second == iii.at(1).second, label(a, n) + ": chain lengths agree");
      r.expect(cert.consistent, label(a, n) + ": consistent");
    }
}

// 3. B2 = B1.
void b2_equals_b1(Report& r) {
  for (const auto& a : corpus::all())
    for (std::size_t n = 1; n <= 2; ++n) {
      const FreeAlgebra f(a, n);
      const auto fam = compute_b1_b2(enumerate_radical_ideals(f));
      bool same = fam.b1.size() == fam.b2.size();
      for (std::size_t i = 0; same && i < fam.b1.size(); ++i) same = fam.b1[i] == fam.b2[i];
      r.expect(same, label(a, n) + ": B2 = B1");
      r.expect(fam.equal == same, label(a, n) + ": reported flag");
    }
}

// 4. Micro-oracles: frozen values, checked against brute force and the library.
void micro(Report& r) {
  const auto sl = oracle::semilattice2();
  const auto z2 = oracle::cyclic(2);
  // Frozen values.
  const std::size_t sl1 = 1, sl2 = 3, z21 = 2, v_absorb = 3;
  const oracle::Points cl_empty{{0}}, cl_one{{0}, {1}};
  const std::set<oracle::Points> zariski{{}, {{0}}, {{0}, {1}}};

  r.expect(oracle::term_functions(sl, 1).size() == sl1, "oracle |F(SL2,1)|");
  r.expect(oracle::term_functions(sl, 2).size() == sl2, "oracle |F(SL2,2)|");
  r.expect(oracle::term_functions(z2, 1).size() == z21, "oracle |F(Z2,1)|");
  r.expect(oracle::closure(z2, 1, {}) == cl_empty, "oracle closure of {}");
  r.expect(oracle::closure(z2, 1, {{1}}) == cl_one, "oracle closure of {1}");
  r.expect(oracle::zariski_closed(z2, 1) == zariski, "oracle Zariski sets");
  std::size_t absorb = 0;
  for (const auto& p : oracle::all_points(2, 2)) absorb += std::min(p[0], p[1]) == p[0];
  r.expect(absorb == v_absorb, "oracle V(meet(x1,x2)=x1)");

  const auto lsl = corpus::semilattice2();
  const auto lz2 = corpus::cyclic_group(2);
  r.expect(FreeAlgebra(lsl, 1).size() == sl1, "|F(SL2,1)| = 1");
  r.expect(FreeAlgebra(lsl, 2).size() == sl2, "|F(SL2,2)| = 3");
  const FreeAlgebra f(lz2, 1);
  r.expect(f.size() == z21, "|F(Z2,1)| = 2");
  r.expect(support::to_points(algebraic_closure(f, PointSet::empty(2, 1))) == cl_empty, "closure({}) = {0}");
  r.expect(support::to_points(algebraic_closure(f, support::to_point_set(2, 1, {{1}}))) == cl_one,
           "closure({1}) = {0,1}");
  const auto s = parse_system("meet(x1,x2) = x1", lsl.signature(), 2);
  r.expect(solution_set(lsl, s).count() == v_absorb, "V_SL2(meet(x1,x2)=x1) has 3 points");
  const RadicalTopology t(f);
  std::set<oracle::Points> got;
  for (const auto& z : enumerate_zariski_closed(t.radicals())) got.insert(support::to_points(z.points));
  r.expect(got == zariski, "Zariski closed sets of Z2 at n=1");
}

// 5. Decompositions recompose and are irredundant.
void decompositions(Report& r) {
  for (const auto& a : corpus::all())
    for (std::size_t n = 1; n <= 2; ++n) {
      const FreeAlgebra f(a, n);
      const RadicalTopology t(f);
      for (const auto& c : t.closed_sets()) {
        const auto comps = irreducible_components(c, t.closed_sets());
        r.expect(!comps.empty(), label(a, n) + ": components exist");
        if (comps.empty()) continue;
        RadicalClosedSet u = comps.front();
        for (const auto& d : comps) u = closed_union(u, d);
        r.expect(u == c, label(a, n) + ": union of components");
        for (std::size_t i = 0; i < comps.size(); ++i) {
          r.expect(is_irreducible(comps[i], t.closed_sets()), label(a, n) + ": component irreducible");
          if (i > 0) r.expect(canonical_less(comps[i - 1], comps[i]), label(a, n) + ": canonical order");
          for (std::size_t j = 0; j < comps.size(); ++j)
            if (i != j) r.expect(!comps[i].is_subset_of(comps[j]), label(a, n) + ": components irredundant");
        }
        const auto again = irreducible_components(c, t.closed_sets());
        r.expect(again.size() == comps.size() && std::equal(again.begin(), again.end(), comps.begin()),
                 label(a, n) + ": components unique");
      }
      for (const auto& y : algebraic_sets(t.radicals())) {
        const auto parts = large_decomposition(t, y);
        r.expect(!parts.empty(), label(a, n) + ": large parts exist");
        if (parts.empty()) continue;
        auto meet = parts.front();
        for (const auto& p : parts) meet &= p;
        r.expect(meet == y, label(a, n) + ": intersection of large parts");
        for (std::size_t i = 0; i < parts.size(); ++i) {
          r.expect(is_algebraic(f, parts[i]), label(a, n) + ": part algebraic");
          for (std::size_t j = 0; j < parts.size(); ++j)
            if (i != j) r.expect(!parts[j].is_subset_of(parts[i]), label(a, n) + ": large parts irredundant");
        }
      }
    }
}

// 6. finite_support and finite_subsystem.
void extraction(Report& r) {
  std::mt19937_64 rng(6);
  for (const auto& a : corpus::all())
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::size_t points = ipow(a.size(), n);
      if (points > 16) break;
      const bool exhaustive = points <= 8;
      const FreeAlgebra f(a, n);

      auto check_support = [&](const PointSet& e) {
        const auto e0 = finite_support(f, e);
        const auto target = point_kernel(f, e);
        r.expect(e0.is_subset_of(e) && point_kernel(f, e0) == target, label(a, n) + ": Rad(E0) = Rad(E)");
        for (const auto c : e0.codes()) {
          auto smaller = e0;
          smaller.erase(c);
          r.expect(!(point_kernel(f, smaller) == target), label(a, n) + ": support irredundant");
        }
      };
      if (exhaustive) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << points); ++mask)
          check_support(support::from_mask(a.size(), n, mask));
      } else {
        for (int i = 0; i < 1000; ++i) check_support(support::from_mask(a.size(), n, rng() & ((std::size_t{1} << points) - 1)));
      }

      // Systems are sets of nontrivial formula classes f < g over F.
      std::vector<ElementPair> classes;
      for (Element x = 0; x < f.size(); ++x)
        for (Element y = x + 1; y < f.size(); ++y) classes.push_back({x, y});
      auto check_system = [&](std::uint64_t mask) {
        std::vector<ElementPair> s;
        for (std::size_t i = 0; i < classes.size(); ++i)
          if ((mask >> i) & 1u) s.push_back(classes[i]);
        const auto kept = finite_subsystem(f, s);
        std::vector<ElementPair> s0;
        for (const auto i : kept) s0.push_back(s[i]);
        const auto target = solution_set(f, s);
        r.expect(solution_set(f, s0) == target, label(a, n) + ": V(S0) = V(S)");
        for (std::size_t drop = 0; drop < s0.size(); ++drop) {
          auto t = s0;
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(drop));
          r.expect(!(solution_set(f, t) == target), label(a, n) + ": subsystem irredundant");
        }
      };
      if (exhaustive && classes.size() <= 16) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << classes.size()); ++mask) check_system(mask);
      } else {
        for (int i = 0; i < 1000; ++i) {
          std::uint64_t mask = 0;
          for (std::size_t j = 0; j < classes.size() && j < 64; ++j)
            if (rng() % 4 == 0) mask |= std::uint64_t{1} << j;
          check_system(mask);
        }
      }
    }
}

// 7. Ultrapowers over every ultrafilter on |I| = 2, 3.
void theorem3(Report& r) {
  for (const auto& a : corpus::all())
    for (std::size_t k = 2; k <= 3; ++k)
      for (const auto& u : FilterOnFiniteSet::all_ultrafilters(k)) {
        const auto p = reduced_product(a, u);
        const std::string what = a.name() + " |I|=" + std::to_string(k);
        r.expect(find_isomorphism(a, p.algebra).has_value(), what + ": isomorphic to A");
        for (std::size_t n = 1; n <= 2; ++n)
          r.expect(verify_radical_topology_equal(a, p.algebra, n).equal, what + ": radical topologies equal");
      }
}

// 8. [S] ⊆ Rad(S).
void ideal_in_radical(Report& r) {
  std::mt19937_64 rng(8);
  for (const auto& a : corpus::all())
    for (std::size_t n = 1; n <= 3; ++n) {
      if (ipow(a.size(), n) > 27) break;
      const FreeAlgebra f(a, n);
      for (int i = 0; i < 1000; ++i) {
        const auto s = random_system(rng, f, 1 + rng() % 4);
        const auto gen = ideal_generated(f, s);
        const auto rad = radical_of_system(f, s);
        r.expect(gen.is_subset_of(rad.kernel), label(a, n) + ": [S] within Rad(S)");
      }
    }
}

// 9. König trace path length equals the lattice height.
void konig(Report& r) {
  const auto refs = oracle::corpus();
  for (const auto& ref : refs)
    for (int n = 1; n <= 2; ++n) {
      const auto a = support::to_library(ref);
      const FreeAlgebra f(a, static_cast<std::size_t>(n));
      const RadicalTopology t(f);
      std::vector<RadicalClosedSet> chain;
      for (const auto i : t.longest_radical_chain()) chain.push_back(t.radical_set(i));
      const auto trace = konig_trace(t, chain);
      const auto alg = oracle::algebraic_sets(ref, n);
      const std::vector<oracle::Points> fam(alg.begin(), alg.end());
      const auto height = oracle::longest_chain(fam, [](const oracle::Points& x, const oracle::Points& y) {
        return x != y && std::includes(y.begin(), y.end(), x.begin(), x.end());
      });
      const auto l = label(a, static_cast<std::size_t>(n));
      r.expect(trace.total_nodes() > 0 && trace.total_nodes() <= t.radicals().size() * chain.size(),
               l + ": finite node count");
      r.expect(trace.max_path_length == height, l + ": max path " + std::to_string(trace.max_path_length) +
                                                    " vs height " + std::to_string(height));
    }
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

std::vector<GoldenCase> golden_cases() {
  return {
      {"solve_z3_square", {"--algebra", "Z3", "solve", "--system", "Square"}},
      {"solve_z2_commute_json", {"--algebra", "Z2", "--json", "solve", "--system", "Commute"}},
      {"radical_z2_commute", {"--algebra", "Z2", "radical", "--system", "Commute"}},
      {"closure_z2_empty", {"--algebra", "Z2", "closure", "--points", "Empty"}},
      {"coord_z2_diagonal", {"--algebra", "Z2", "coord", "--points", "Diagonal"}},
      {"free_z3_2", {"--algebra", "Z3", "free", "--vars", "2"}},
      {"topology_z2_2", {"--algebra", "Z2", "topology", "--vars", "2"}},
      {"decompose_z2_2", {"--algebra", "Z2", "decompose", "--vars", "2"}},
      {"konig_z3_2", {"--algebra", "Z3", "konig-trace", "--vars", "2"}},
      {"check_artinian_z2_1", {"--algebra", "Z2", "check", "artinian", "--vars", "1"}},
      {"check_noetherian_z3_2",
       {"--algebra", "Z3", "--seed", "7", "check", "noetherian", "--vars", "2", "--samples", "50"}},
      {"product_z2_3", {"--algebra", "Z2", "product", "--index", "3", "--principal-at", "1"}},
      {"verify_theorem3_zeromul2", {"--algebra", "ZeroMul2", "verify", "theorem3", "--index", "3"}},
      {"verify_theorem4_z3_1", {"--algebra", "Z3", "verify", "theorem4", "--vars", "1"}},
  };
}

// 10. CLI output is byte identical across runs and matches the golden files.
void cli_golden(Report& r, const std::string& model, const std::filesystem::path& dir, bool update) {
  for (const auto& c : golden_cases()) {
    std::vector<std::string> args{"uag", "-f", model};
    args.insert(args.end(), c.args.begin(), c.args.end());
    std::string runs[2];
    for (auto& out : runs) {
      std::ostringstream o;
      std::ostringstream e;
      const int code = cli::run(args, o, e);
      r.expect(code == 0, c.name + ": exit code " + std::to_string(code) + " " + e.str());
      out = o.str();
    }
    r.expect(runs[0] == runs[1], c.name + ": repeated runs differ");
    const auto path = dir / (c.name + ".txt");
    if (update) {
      std::ofstream(path, std::ios::binary) << runs[0];
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    r.expect(static_cast<bool>(in), c.name + ": missing golden file");
    std::stringstream golden;
    golden << in.rdbuf();
    r.expect(golden.str() == runs[0], c.name + ": differs from golden file");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <tutorial.uag> <golden-dir> [--update-golden]\n";
    return 2;
  }
  const std::string model = argv[1];
  const std::filesystem::path golden = argv[2];
  const bool update = argc > 3 && std::strcmp(argv[3], "--update-golden") == 0;

  const std::vector<std::pair<std::string, std::function<void(Report&)>>> criteria{
      {"Galois connection laws (m^n <= 16)", galois},
      {"artinian certificates at n = 1, 2", artinian},
      {"B2 = B1 at n = 1, 2", b2_equals_b1},
      {"micro-oracles", micro},
      {"decompositions recompose and are irredundant", decompositions},
      {"finite subsystem and support extraction", extraction},
      {"ultrapowers on |I| = 2, 3 keep the radical topology", theorem3},
      {"[S] contained in Rad(S)", ideal_in_radical},
      {"Konig trace path length = lattice height", konig},
      {"CLI golden output and determinism", [&](Report& r) { cli_golden(r, model, golden, update); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << (i + 1) << ": " << (r.passed() ? "PASS" : "FAIL") << "  " << criteria[i].first
              << "  (" << r.checks() << " checks, " << ms << " ms)\n";
    for (const auto& f : r.failures()) std::cout << "    " << f << '\n';
    if (r.failed() > r.failures().size())
      std::cout << "    ... " << (r.failed() - r.failures().size()) << " more failures\n";
    all = all && r.passed();
  }
  return all ? 0 : 1;
}
