#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <uag/corpus.hpp>
#include <uag/error.hpp>
#include <uag/products.hpp>

#include "support.hpp"

using namespace uag;

TEST_CASE("filters on a finite index set") {
  const auto f = FilterOnFiniteSet::principal(3, 0b101);
  CHECK(f.contains(0b101));
  CHECK(f.contains(0b111));
  CHECK_FALSE(f.contains(0b001));
  CHECK(f.generator() == 0b101);
  CHECK_FALSE(f.is_ultrafilter());
  CHECK(FilterOnFiniteSet::principal_at(3, 1).is_ultrafilter());
  CHECK(FilterOnFiniteSet::all_ultrafilters(4).size() == 4);
  CHECK(FilterOnFiniteSet::from_members(2, {0b01, 0b11}).generator() == 0b01);
  CHECK_THROWS_AS(FilterOnFiniteSet::from_members(2, {0b01, 0b10, 0b11}), SemanticError);
  CHECK_THROWS_AS(FilterOnFiniteSet::principal_at(2, 2), SemanticError);
  CHECK_THROWS_AS(reject_nonprincipal("x"), SemanticError);
}

TEST_CASE("ultrapowers over principal ultrafilters are isomorphic to the factor") {
  for (const auto& a : corpus::all())
    for (std::size_t k = 2; k <= 3; ++k)
      for (const auto& u : FilterOnFiniteSet::all_ultrafilters(k)) {
        const auto p = reduced_product(a, u);
        CHECK(p.algebra.size() == a.size());
        CHECK(find_isomorphism(a, p.algebra).has_value());
        CHECK(is_homomorphism(power_algebra(a, k), p.algebra, p.quotient_map));
        // The quotient map factors through the coordinate picked by the ultrafilter.
        const auto i = static_cast<std::size_t>(std::countr_zero(u.generator()));
        for (std::size_t code = 0; code < p.quotient_map.map.size(); ++code)
          for (std::size_t other = 0; other < p.quotient_map.map.size(); ++other) {
            const auto x = decode_tuple(a.size(), k, code);
            const auto y = decode_tuple(a.size(), k, other);
            CHECK((p.quotient_map(static_cast<Element>(code)) == p.quotient_map(static_cast<Element>(other))) ==
                  (x[i] == y[i]));
          }
      }
}

TEST_CASE("finer filters give quotients of coarser products") {
  const auto a = corpus::cyclic_group(2);
  const auto coarse = reduced_product(a, FilterOnFiniteSet::principal(3, 0b111));
  const auto fine = reduced_product(a, FilterOnFiniteSet::principal(3, 0b011));
  CHECK(coarse.algebra.size() == 8);
  CHECK(fine.algebra.size() == 4);
  // coarse -> fine: send each class to the class of any representative.
  HomMap h;
  h.map.assign(coarse.algebra.size(), 0);
  for (std::size_t code = 0; code < 8; ++code) h.map[coarse.quotient_map.map[code]] = fine.quotient_map.map[code];
  CHECK(is_homomorphism(coarse.algebra, fine.algebra, h));
}

TEST_CASE("radical topology comparison") {
  for (const auto& a : corpus::all()) {
    const auto b = reduced_product(a, FilterOnFiniteSet::principal_at(2, 1)).algebra;
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto ab = verify_radical_topology_equal(a, b, n);
      const auto ba = verify_radical_topology_equal(b, a, n);
      CHECK(ab.equal);
      CHECK(ba.equal);
      CHECK(ab.radicals_a == ab.radicals_b);
      CHECK(ab.radicals_a == ba.radicals_a);
      CHECK(ab.isomorphism.is_bijective(b.size()));
      CHECK_FALSE(ab.note.empty());
    }
  }
  CHECK_THROWS_AS(verify_radical_topology_equal(corpus::cyclic_group(2), corpus::zero_mul2(), 1), SemanticError);
  CHECK_THROWS_AS(verify_radical_topology_equal(corpus::cyclic_group(2), corpus::semilattice2(), 1), SemanticError);
}

TEST_CASE("preservation report") {
  const auto r = verify_preservation(corpus::cyclic_group(2), 1, {});
  CHECK(r.all_certified);
  std::size_t subalgebras = 0;
  for (const auto& e : r.entries) {
    CHECK(e.certified);
    CHECK(e.descending_radical == e.ascending_algebraic);
    if (e.kind == "subalgebra") ++subalgebras;
  }
  CHECK(subalgebras == 2);
  CHECK(verify_preservation(corpus::semilattice2(), 2, {}).all_certified);
}
