#pragma once

#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "gatecap/complex_matrix.hpp"
#include "gatecap/rng.hpp"
#include "gatecap/states.hpp"

namespace gatecap::testutil {

inline PureState random_state(std::size_t num_qubits, Rng& rng) {
    std::vector<cplx> amps(std::size_t{1} << num_qubits);
    double n2 = 0.0;
    for (auto& a : amps) {
        a = cplx(rng.normal(), rng.normal());
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps) {
        a *= inv;
    }
    return PureState(num_qubits, std::move(amps));
}

inline ComplexMatrix random_su2(Rng& rng) {
    cplx a(rng.normal(), rng.normal());
    cplx b(rng.normal(), rng.normal());
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    return ComplexMatrix{{a, -std::conj(b)}, {b, std::conj(a)}};
}

inline DensityMatrix random_density(std::size_t dim_qubits, Rng& rng) {
    const std::size_t d = std::size_t{1} << dim_qubits;
    ComplexMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            g(i, j) = cplx(rng.normal(), rng.normal());
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx(1.0, 0.0) / rho.trace();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = avg;
            rho(j, i) = std::conj(avg);
        }
        rho(i, i) = cplx(rho(i, i).real(), 0.0);
    }
    rho(0, 0) -= (rho.trace() - cplx(1.0, 0.0)).real();
    return DensityMatrix(std::move(rho));
}

// Independent partial-trace oracle: explicit four-index contraction of
// |psi><psi| using per-qubit bit extraction, no shared index tables.
inline ComplexMatrix brute_force_reduced(const PureState& psi, const std::set<std::size_t>& keep) {
    const std::size_t n = psi.num_qubits();
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::vector<std::size_t> traced;
    for (std::size_t q = 1; q <= n; ++q) {
        if (keep.count(q) == 0) {
            traced.push_back(q);
        }
    }
    auto qubit_bit = [&](std::size_t index, std::size_t q) {
        return (index >> (n - q)) & std::size_t{1};
    };
    const std::size_t dk = std::size_t{1} << kept.size();
    ComplexMatrix out(dk, dk);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        for (std::size_t j = 0; j < psi.dim(); ++j) {
            bool same_traced = true;
            for (const auto q : traced) {
                if (qubit_bit(i, q) != qubit_bit(j, q)) {
                    same_traced = false;
                    break;
                }
            }
            if (!same_traced) {
                continue;
            }
            std::size_t a = 0;
            std::size_t b = 0;
            for (std::size_t k = 0; k < kept.size(); ++k) {
                a = (a << 1) | qubit_bit(i, kept[k]);
                b = (b << 1) | qubit_bit(j, kept[k]);
            }
            out(a, b) += psi.amplitude(i) * std::conj(psi.amplitude(j));
        }
    }
    return out;
}

// Closed-form squared singular values of a 2x2 complex matrix.
inline std::array<double, 2> svd2_squared(const ComplexMatrix& m) {
    const double t = m.frobenius_norm() * m.frobenius_norm();
    const double d = std::abs(m.determinant());
    const double disc = std::sqrt(std::max(t * t - 4.0 * d * d, 0.0));
    return {(t + disc) / 2.0, (t - disc) / 2.0};
}

inline PureState bell_pair_on(std::size_t num_qubits, std::size_t qa, std::size_t qb,
                              cplx phase = cplx(1.0, 0.0)) {
    const std::size_t n = num_qubits;
    std::vector<cplx> amps(std::size_t{1} << n, cplx(0.0, 0.0));
    const double r = 1.0 / std::sqrt(2.0);
    amps[0] = r;
    amps[(std::size_t{1} << (n - qa)) | (std::size_t{1} << (n - qb))] = r * phase;
    return PureState(n, std::move(amps));
}

}  // namespace gatecap::testutil
