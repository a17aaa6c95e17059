#pragma once

#include <vector>

#include "gatecap/complex_matrix.hpp"

namespace gatecap {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Sweeps until the
// off-diagonal Frobenius norm drops below `threshold` (default 1e-14) or
// `max_sweeps` (default 100) is exhausted; throws on non-convergence.
// Deterministic: fixed sweep order, eigenpairs sorted ascending with a
// stable tie order.
EigenDecomposition hermitian_eig(const ComplexMatrix& a, double threshold = 1e-14,
                                 int max_sweeps = 100);

// Eigenvalues only (no eigenvector accumulation); same iteration.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double threshold = 1e-14,
                                          int max_sweeps = 100);

}  // namespace gatecap
