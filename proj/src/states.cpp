#include "gatecap/states.hpp"

#include <cmath>
#include <stdexcept>

namespace gatecap {

PureState::PureState(std::size_t num_qubits)
    : num_qubits_(num_qubits), amplitudes_(std::size_t{1} << num_qubits, cplx(0.0, 0.0)) {
    amplitudes_[0] = 1.0;
}

PureState::PureState(std::size_t num_qubits, std::size_t basis_index)
    : num_qubits_(num_qubits), amplitudes_(std::size_t{1} << num_qubits, cplx(0.0, 0.0)) {
    if (basis_index >= amplitudes_.size()) {
        throw std::out_of_range("PureState: basis index out of range");
    }
    amplitudes_[basis_index] = 1.0;
}

PureState::PureState(std::size_t num_qubits, std::vector<cplx> amplitudes, double norm_tol)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("PureState: amplitude count must be 2^n");
    }
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("PureState: non-finite amplitude");
        }
    }
    if (std::abs(norm() - 1.0) > norm_tol) {
        throw std::invalid_argument("PureState: state is not normalized");
    }
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

cplx PureState::inner_product(const PureState& other) const {
    if (num_qubits_ != other.num_qubits_) {
        throw std::invalid_argument("PureState: qubit count mismatch in inner product");
    }
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return acc;
}

PureState PureState::conjugated() const {
    std::vector<cplx> amps(amplitudes_.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = std::conj(amplitudes_[i]);
    }
    return PureState(num_qubits_, std::move(amps));
}

PureState PureState::tensor_with(const PureState& other) const {
    std::vector<cplx> amps(dim() * other.dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < other.dim(); ++j) {
            amps[i * other.dim() + j] = amplitudes_[i] * other.amplitudes_[j];
        }
    }
    return PureState(num_qubits_ + other.num_qubits_, std::move(amps));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : matrix_(std::move(m)) {
    if (!matrix_.is_square()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    std::size_t d = matrix_.rows();
    if ((d & (d - 1)) != 0) {
        throw std::invalid_argument("DensityMatrix: dimension must be a power of two");
    }
    if (!matrix_.all_finite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
    if (matrix_.hermiticity_defect() > tol) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - cplx(1.0, 0.0)) > tol) {
        throw std::invalid_argument("DensityMatrix: trace must be 1");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = psi.amplitude(i) * std::conj(psi.amplitude(j));
        }
    }
    return DensityMatrix(std::move(m));
}

std::size_t DensityMatrix::num_qubits() const {
    std::size_t n = 0;
    std::size_t d = dim();
    while (d > 1) {
        d >>= 1;
        ++n;
    }
    return n;
}

Bipartition::Bipartition(std::set<std::size_t> a, std::set<std::size_t> b)
    : side_a(std::move(a)), side_b(std::move(b)) {
    for (const auto q : side_a) {
        if (side_b.count(q) != 0) {
            throw std::invalid_argument("Bipartition: sides overlap");
        }
    }
}

Bipartition Bipartition::first_k(std::size_t num_qubits, std::size_t k) {
    std::set<std::size_t> a;
    std::set<std::size_t> b;
    for (std::size_t q = 1; q <= num_qubits; ++q) {
        (q <= k ? a : b).insert(q);
    }
    return Bipartition(std::move(a), std::move(b));
}

void Bipartition::validate_for(std::size_t nq) const {
    if (side_a.size() + side_b.size() != nq) {
        throw std::invalid_argument("Bipartition: sides do not cover the register");
    }
    for (std::size_t q = 1; q <= nq; ++q) {
        if (side_a.count(q) + side_b.count(q) != 1) {
            throw std::invalid_argument("Bipartition: qubit labels must cover 1..n exactly once");
        }
    }
}

}  // namespace gatecap
