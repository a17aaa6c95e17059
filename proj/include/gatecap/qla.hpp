#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "gatecap/complex_matrix.hpp"
#include "gatecap/states.hpp"

namespace gatecap::qla {

// Trace out the complement of `keep` (1-based labels). The kept qubits
// keep their relative order as index bits of the result.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::size_t>& keep);

// Reduced density matrix of a pure state over `keep`, computed directly
// from the amplitudes (never materializes |psi><psi| at full dimension).
DensityMatrix reduced_density(const PureState& psi, const std::set<std::size_t>& keep);

// von Neumann entropy in bits (base-2). Eigenvalues in [-1e-10, 1e-12)
// are clamped to 0; anything more negative is an invariant violation.
double vn_entropy(const DensityMatrix& rho);

// Entropy of entanglement across the cut, in ebits; equals the entropy
// of either side's reduced state.
double entanglement_entropy(const PureState& psi, const Bipartition& cut);

struct SchmidtDecomposition {
    std::vector<double> coefficients;     // sqrt(lambda_n), descending
    std::vector<std::vector<cplx>> basis_a;  // orthonormal states on side A
    std::vector<std::vector<cplx>> basis_b;  // orthonormal states on side B
};

SchmidtDecomposition schmidt(const PureState& psi, const Bipartition& cut);

// Apply a 2^k x 2^k unitary to the ordered target qubits (targets[0] is
// the most significant bit of the gate's own index space).
PureState apply_on_qubits(const ComplexMatrix& u, const PureState& psi,
                          const std::vector<std::size_t>& targets, double unitary_tol = 1e-10);

// Tensor word of Pauli operators: sigma_{k} on each listed qubit,
// identity elsewhere, over a register of num_qubits.
ComplexMatrix pauli_word(std::size_t num_qubits,
                         const std::vector<std::pair<std::size_t, int>>& factors);

// -sum lambda log2 lambda with the same clamping rule as vn_entropy.
double entropy_of_spectrum(const std::vector<double>& eigenvalues);

}  // namespace gatecap::qla
