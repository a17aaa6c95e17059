#pragma once

#include <array>
#include <cstdint>

#include "gatecap/complex_matrix.hpp"

namespace gatecap::canonical {

// Canonical interaction content of a two-qubit unitary:
//   U = global_phase * (after_a (x) after_b) * U_d(alphas) * (before_a (x) before_b)
// with U_d(a) = exp[-i (a1 XX + a2 YY + a3 ZZ)] and the representative
// chosen in the Weyl chamber pi/4 >= a1 >= a2 >= |a3|.
struct CanonicalForm {
    std::array<double, 3> alphas{};
    ComplexMatrix before_a;
    ComplexMatrix before_b;
    ComplexMatrix after_a;
    ComplexMatrix after_b;
    cplx global_phase{1.0, 0.0};

    ComplexMatrix reconstruct() const;
    double weyl_violation() const;  // how far alphas sit outside the chamber
};

// exp[-i (a1 XX + a2 YY + a3 ZZ)], built in the magic basis where it is
// diagonal (no matrix exponential needed).
ComplexMatrix u_d(const std::array<double, 3>& alphas);

// Kraus-Cirac style decomposition into the canonical form above.
// Deterministic: the complex-symmetric diagonalization mixes real and
// imaginary parts with directions drawn from `seed`, retrying once with
// a second direction before raising.
CanonicalForm decompose(const ComplexMatrix& u, std::uint64_t seed = 20240817);

struct ConjugationReport {
    double conj_vs_dagger;  // ||conj(U_d) - U_d^dag||_F
    double unitarity;       // ||U_d U_d^dag - I||_F
    double max_residual() const { return conj_vs_dagger > unitarity ? conj_vs_dagger : unitarity; }
};

// Checks conj(U_d) = U_d^dag = U_d^{-1}, which holds for every alpha
// triple and drives the capability symmetry argument.
ConjugationReport conjugation_check(const std::array<double, 3>& alphas);

// Splits a Kronecker-product unitary K = e^{i phase} (a (x) b) into its
// 2x2 factors. Throws if K is not a product within tolerance.
struct ProductSplit {
    ComplexMatrix left;   // 2x2
    ComplexMatrix right;  // 2x2
    double phase;         // radians
};
ProductSplit split_product_gate(const ComplexMatrix& k);

}  // namespace gatecap::canonical
