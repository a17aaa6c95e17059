#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "gatecap/complex_matrix.hpp"

namespace gatecap {

// Qubit labels are 1-based. Qubit 1 is the MOST SIGNIFICANT bit of the
// amplitude index: |q1 q2 ... qn> maps to index (q1<<(n-1)) | ... | qn.
class PureState {
  public:
    // trivial 0-qubit state [1]
    PureState() : PureState(0) {}
    // |00...0> on n qubits (n = 0 gives the trivial 1-dim state)
    explicit PureState(std::size_t num_qubits);
    // computational basis state
    PureState(std::size_t num_qubits, std::size_t basis_index);
    // arbitrary amplitudes; must be normalized within norm_tol
    PureState(std::size_t num_qubits, std::vector<cplx> amplitudes, double norm_tol = 1e-12);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }

    const std::vector<cplx>& amplitudes() const { return amplitudes_; }
    cplx amplitude(std::size_t i) const { return amplitudes_[i]; }

    double norm() const;
    cplx inner_product(const PureState& other) const;

    PureState conjugated() const;
    // this (x) other, with this holding the high-order qubits
    PureState tensor_with(const PureState& other) const;

  private:
    std::size_t num_qubits_ = 0;
    std::vector<cplx> amplitudes_;
};

// Square 2^n x 2^n density operator: Hermitian within 1e-12, unit trace
// within 1e-12. Eigenvalue positivity is enforced where spectra are
// actually computed (entropy), with the documented clamping rule.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m, double tol = 1e-12);

    static DensityMatrix from_pure(const PureState& psi);

    std::size_t dim() const { return matrix_.rows(); }
    std::size_t num_qubits() const;
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    ComplexMatrix matrix_;
};

// Disjoint cover of qubit labels {1..n} into Alice's and Bob's sides.
struct Bipartition {
    std::set<std::size_t> side_a;
    std::set<std::size_t> side_b;

    Bipartition(std::set<std::size_t> a, std::set<std::size_t> b);

    // first n_a labels vs the rest, for n qubits
    static Bipartition first_k(std::size_t num_qubits, std::size_t k);

    std::size_t num_qubits() const { return side_a.size() + side_b.size(); }
    void validate_for(std::size_t num_qubits) const;
};

}  // namespace gatecap
