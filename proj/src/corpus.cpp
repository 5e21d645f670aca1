#include "uag/corpus.hpp"

namespace uag::corpus {

Signature group_signature() {
  Signature sig;
  sig.add("mul", 2);
  sig.add("inv", 1);
  sig.add("e", 0);
  return sig;
}

Signature semilattice_signature() {
  Signature sig;
  sig.add("meet", 2);
  return sig;
}

FiniteAlgebra semilattice2() { return FiniteAlgebra(semilattice_signature(), 2, {{0, 0, 0, 1}}, "SL2"); }

FiniteAlgebra cyclic_group(std::size_t k) {
  std::vector<Element> mul(k * k), inv(k);
  for (std::size_t a = 0; a < k; ++a) {
    inv[a] = static_cast<Element>((k - a) % k);
    for (std::size_t b = 0; b < k; ++b) mul[a * k + b] = static_cast<Element>((a + b) % k);
  }
  return FiniteAlgebra(group_signature(), k, {mul, inv, {0}}, "Z" + std::to_string(k));
}

FiniteAlgebra zero_mul2() { return FiniteAlgebra(group_signature(), 2, {{0, 0, 0, 0}, {0, 1}, {0}}, "ZeroMul2"); }

std::vector<FiniteAlgebra> all() { return {semilattice2(), cyclic_group(2), cyclic_group(3), zero_mul2()}; }

}  // namespace uag::corpus
