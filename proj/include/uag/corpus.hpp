#pragma once

#include <cstddef>
#include <vector>

#include "uag/algebra.hpp"

// Small algebras used throughout the tests and the tutorial.
namespace uag::corpus {

/// mul/2, inv/1, e/0
Signature group_signature();
/// meet/2
Signature semilattice_signature();

/// {0,1} with meet = min.
FiniteAlgebra semilattice2();
/// Z_k under addition, inv = negation, e = 0.
FiniteAlgebra cyclic_group(std::size_t k);
/// {0,1} in the group signature with mul constantly 0, inv the identity, e = 0.
FiniteAlgebra zero_mul2();

/// SL2, Z2-group, Z3-group, zero-mul.
std::vector<FiniteAlgebra> all();

}  // namespace uag::corpus
