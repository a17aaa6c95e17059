#pragma once

#include <optional>
#include <string>

#include "gatecap/complex_matrix.hpp"

namespace gatecap::gates {

// sigma(0)=I, sigma(1)=X, sigma(2)=Y, sigma(3)=Z
const ComplexMatrix& sigma(int k);

const ComplexMatrix& identity2();
const ComplexMatrix& identity4();
const ComplexMatrix& hadamard();
const ComplexMatrix& cnot();
const ComplexMatrix& cz();
const ComplexMatrix& swap();
const ComplexMatrix& iswap();

// Magic (Bell) basis change. Columns are the magic-basis states in the
// computational basis; conjugating SU(2)x(SU(2) by it gives SO(4), and
// the canonical interaction exp[-i sum_k a_k sigma_k (x) sigma_k] is
// diagonal in it.
const ComplexMatrix& magic_basis();

// Named two-qubit gates accepted on CLI and protocol files. Two-qubit
// names: CNOT, CZ, SWAP, ISWAP, IDENTITY; single-qubit: I, X, Y, Z, H.
std::optional<ComplexMatrix> by_name(const std::string& name);

}  // namespace gatecap::gates
