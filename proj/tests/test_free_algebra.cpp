#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <uag/corpus.hpp>
#include <uag/error.hpp>
#include <uag/free_algebra.hpp>

#include "support.hpp"

using namespace uag;

TEST_CASE("free algebra sizes match the oracle") {
  for (const auto& ref : oracle::corpus()) {
    const auto a = support::to_library(ref);
    for (std::size_t n = 1; n <= 3; ++n) {
      if (a.size() == 3 && n == 3) continue;
      CAPTURE(a.name());
      CAPTURE(n);
      const FreeAlgebra f(a, n);
      CHECK(support::to_functions(f) == oracle::term_functions(ref, static_cast<int>(n)));
    }
  }
}

TEST_CASE("micro sizes") {
  CHECK(FreeAlgebra(corpus::semilattice2(), 1).size() == 1);
  CHECK(FreeAlgebra(corpus::semilattice2(), 2).size() == 3);
  CHECK(FreeAlgebra(corpus::cyclic_group(2), 1).size() == 2);
  CHECK(FreeAlgebra(corpus::cyclic_group(3), 2).size() == 9);
}

TEST_CASE("witnesses evaluate to their element") {
  for (const auto& a : corpus::all()) {
    const FreeAlgebra f(a, 2);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(term_function(a, f.witness(i), 2) == std::vector<Element>(f.values(i).begin(), f.values(i).end()));
      CHECK(f.canonicalize(f.witness(i)) == i);
    }
    CHECK(format_term(f.witness(f.generator(1))) == "x1");
    CHECK(format_term(f.witness(f.generator(2))) == "x2");
    CHECK_THROWS_AS(f.witness(f.size()), SemanticError);
  }
}

TEST_CASE("element order is discovery order") {
  const FreeAlgebra f(corpus::cyclic_group(2), 2);
  REQUIRE(f.size() == 4);
  CHECK(format_term(f.witness(0)) == "x1");
  CHECK(format_term(f.witness(1)) == "x2");
  CHECK(format_term(f.witness(2)) == "e");
  CHECK(format_term(f.witness(3)) == "mul(x1,x2)");
}

TEST_CASE("induced algebra is the algebra of term functions") {
  const auto a = corpus::cyclic_group(3);
  const FreeAlgebra f(a, 1);
  const auto& fa = f.algebra();
  CHECK(fa.size() == f.size());
  const auto mul = *fa.signature().find("mul");
  for (Element x = 0; x < fa.size(); ++x)
    for (Element y = 0; y < fa.size(); ++y) {
      const std::vector<Element> args{x, y};
      const auto z = fa.apply(mul, args);
      for (std::size_t p = 0; p < f.point_count(); ++p)
        CHECK(f.value_at(z, p) == (f.value_at(x, p) + f.value_at(y, p)) % 3);
    }
}

TEST_CASE("function space bound") {
  const FreeAlgebra f(corpus::semilattice2(), 2);
  CHECK(f.function_space_bound() == 16u);
  CHECK_FALSE(f.saturates_bound());
}
