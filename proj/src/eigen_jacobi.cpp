#include "gatecap/eigen_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gatecap {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            s += 2.0 * std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

// One cyclic sweep of complex Jacobi rotations on the working copy `a`,
// optionally accumulating the rotations into `v`.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix* v) {
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const cplx apq = a(p, q);
            const double m = std::abs(apq);
            if (m == 0.0) {
                continue;
            }
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            // Rotation angle: tan(2*theta) = 2|apq| / (aqq - app),
            // smaller-root form for stability.
            const double tau = (aqq - app) / (2.0 * m);
            double t;
            if (tau >= 0.0) {
                t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
            } else {
                t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
            }
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const cplx phase = apq / m;
            const cplx s = phase * (t * c);
            const cplx sbar = std::conj(s);

            // Columns p,q: A <- A J with J = [[c, s], [-conj(s), c]]
            for (std::size_t i = 0; i < n; ++i) {
                const cplx aip = a(i, p);
                const cplx aiq = a(i, q);
                a(i, p) = c * aip - sbar * aiq;
                a(i, q) = s * aip + c * aiq;
            }
            // Rows p,q: A <- J^dag A
            for (std::size_t i = 0; i < n; ++i) {
                const cplx api = a(p, i);
                const cplx aqi = a(q, i);
                a(p, i) = c * api - s * aqi;
                a(q, i) = sbar * api + c * aqi;
            }
            a(p, q) = cplx(0.0, 0.0);
            a(q, p) = cplx(0.0, 0.0);
            a(p, p) = cplx(a(p, p).real(), 0.0);
            a(q, q) = cplx(a(q, q).real(), 0.0);

            if (v != nullptr) {
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = (*v)(i, p);
                    const cplx viq = (*v)(i, q);
                    (*v)(i, p) = c * vip - sbar * viq;
                    (*v)(i, q) = s * vip + c * viq;
                }
            }
        }
    }
}

void run_jacobi(ComplexMatrix& a, ComplexMatrix* v, double threshold, int max_sweeps) {
    if (!a.is_square()) {
        throw std::invalid_argument("hermitian_eig: matrix must be square");
    }
    if (a.hermiticity_defect() > 1e-10) {
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    }
    // Symmetrize exactly so roundoff in the input cannot drift the sweep.
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
        a(i, i) = cplx(a(i, i).real(), 0.0);
    }
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) {
            return;
        }
        jacobi_sweep(a, v);
    }
    if (off_diagonal_norm(a) > threshold) {
        throw std::runtime_error("hermitian_eig: Jacobi iteration did not converge");
    }
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& a, double threshold, int max_sweeps) {
    ComplexMatrix work = a;
    ComplexMatrix vecs = ComplexMatrix::identity(a.rows());
    run_jacobi(work, &vecs, threshold, max_sweeps);

    const std::size_t n = work.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return work(i, i).real() < work(j, j).real();
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = work(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = vecs(i, order[k]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double threshold,
                                          int max_sweeps) {
    ComplexMatrix work = a;
    run_jacobi(work, nullptr, threshold, max_sweeps);
    std::vector<double> vals(work.rows());
    for (std::size_t i = 0; i < work.rows(); ++i) {
        vals[i] = work(i, i).real();
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace gatecap
