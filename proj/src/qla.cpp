#include "gatecap/qla.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gatecap/eigen_jacobi.hpp"
#include "gatecap/gates.hpp"

namespace gatecap::qla {

namespace {

// Lookup table mapping reduced-index values of a label subset to their
// contribution in the full amplitude index. Labels are 1-based; within
// the subset the lowest label is the most significant reduced bit.
std::vector<std::size_t> index_table(std::size_t num_qubits, const std::vector<std::size_t>& labels) {
    const std::size_t m = labels.size();
    std::vector<std::size_t> table(std::size_t{1} << m, 0);
    for (std::size_t v = 0; v < table.size(); ++v) {
        std::size_t full = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if ((v >> (m - 1 - i)) & 1U) {
                full |= std::size_t{1} << (num_qubits - labels[i]);
            }
        }
        table[v] = full;
    }
    return table;
}

std::vector<std::size_t> sorted_labels(const std::set<std::size_t>& s) {
    return {s.begin(), s.end()};
}

void check_labels(std::size_t num_qubits, const std::set<std::size_t>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("qla: kept qubit set must be nonempty");
    }
    for (const auto q : keep) {
        if (q < 1 || q > num_qubits) {
            throw std::out_of_range("qla: qubit label out of range");
        }
    }
}

std::vector<std::size_t> complement(std::size_t num_qubits, const std::set<std::size_t>& keep) {
    std::vector<std::size_t> out;
    for (std::size_t q = 1; q <= num_qubits; ++q) {
        if (keep.count(q) == 0) {
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::size_t>& keep) {
    const std::size_t n = rho.num_qubits();
    check_labels(n, keep);
    const auto kept = sorted_labels(keep);
    const auto traced = complement(n, keep);
    const auto keep_idx = index_table(n, kept);
    const auto trace_idx = index_table(n, traced);

    const std::size_t dk = keep_idx.size();
    ComplexMatrix out(dk, dk);
    const ComplexMatrix& m = rho.matrix();
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = a; b < dk; ++b) {
            cplx acc(0.0, 0.0);
            for (const auto t : trace_idx) {
                acc += m(keep_idx[a] | t, keep_idx[b] | t);
            }
            out(a, b) = acc;
            out(b, a) = std::conj(acc);
        }
        out(a, a) = cplx(out(a, a).real(), 0.0);
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix reduced_density(const PureState& psi, const std::set<std::size_t>& keep) {
    const std::size_t n = psi.num_qubits();
    check_labels(n, keep);
    const auto kept = sorted_labels(keep);
    const auto traced = complement(n, keep);
    const auto keep_idx = index_table(n, kept);
    const auto trace_idx = index_table(n, traced);
    const auto& amp = psi.amplitudes();

    const std::size_t dk = keep_idx.size();
    ComplexMatrix out(dk, dk);
    for (std::size_t a = 0; a < dk; ++a) {
        // Diagonal with compensated summation: the unit-trace invariant is
        // checked at 1e-12 and plain accumulation over 2^14+ terms can
        // drift past it.
        double diag = 0.0;
        double comp = 0.0;
        for (const auto t : trace_idx) {
            const double term = std::norm(amp[keep_idx[a] | t]);
            const double y = term - comp;
            const double s = diag + y;
            comp = (s - diag) - y;
            diag = s;
        }
        out(a, a) = diag;
        for (std::size_t b = a + 1; b < dk; ++b) {
            cplx acc(0.0, 0.0);
            for (const auto t : trace_idx) {
                acc += amp[keep_idx[a] | t] * std::conj(amp[keep_idx[b] | t]);
            }
            out(a, b) = acc;
            out(b, a) = std::conj(acc);
        }
    }
    return DensityMatrix(std::move(out));
}

double entropy_of_spectrum(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (const auto lam : eigenvalues) {
        if (lam < -1e-10) {
            throw std::invalid_argument("entropy: spectrum has eigenvalue below -1e-10");
        }
        if (lam < 1e-12) {
            continue;  // 0 log 0 := 0
        }
        s -= lam * std::log2(lam);
    }
    return s < 0.0 ? 0.0 : s;
}

double vn_entropy(const DensityMatrix& rho) {
    return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

double entanglement_entropy(const PureState& psi, const Bipartition& cut) {
    cut.validate_for(psi.num_qubits());
    if (cut.side_a.empty() || cut.side_b.empty()) {
        return 0.0;  // trivial cut
    }
    // Either side gives the same spectrum for a pure state; use the smaller.
    const auto& side = cut.side_a.size() <= cut.side_b.size() ? cut.side_a : cut.side_b;
    return vn_entropy(reduced_density(psi, side));
}

SchmidtDecomposition schmidt(const PureState& psi, const Bipartition& cut) {
    cut.validate_for(psi.num_qubits());
    if (cut.side_a.empty() || cut.side_b.empty()) {
        throw std::invalid_argument("schmidt: both sides of the cut must be nonempty");
    }
    const std::size_t n = psi.num_qubits();
    const auto labels_a = sorted_labels(cut.side_a);
    const auto labels_b = sorted_labels(cut.side_b);
    const auto idx_a = index_table(n, labels_a);
    const auto idx_b = index_table(n, labels_b);
    const std::size_t da = idx_a.size();
    const std::size_t db = idx_b.size();

    ComplexMatrix amp(da, db);
    for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
            amp(a, b) = psi.amplitude(idx_a[a] | idx_b[b]);
        }
    }

    const ComplexMatrix rho_a = amp * amp.adjoint();
    const auto eig = hermitian_eig(rho_a);

    // Keep eigenvalues above the noise floor of the eigensolver; smaller
    // ones would produce garbage Schmidt vectors through the 1/sqrt(lam).
    constexpr double kLambdaFloor = 1e-13;
    SchmidtDecomposition out;
    for (std::size_t k = eig.values.size(); k-- > 0;) {
        const double lam = eig.values[k];
        if (lam < kLambdaFloor) {
            break;  // ascending order: all remaining are smaller
        }
        std::vector<cplx> phi(da);
        for (std::size_t a = 0; a < da; ++a) {
            phi[a] = eig.vectors(a, k);
        }
        // chi[b] = sum_a conj(phi[a]) * amp[a][b] / sqrt(lam), renormalized
        std::vector<cplx> chi(db, cplx(0.0, 0.0));
        for (std::size_t a = 0; a < da; ++a) {
            const cplx pa = std::conj(phi[a]);
            for (std::size_t b = 0; b < db; ++b) {
                chi[b] += pa * amp(a, b);
            }
        }
        double norm2 = 0.0;
        for (const auto& c : chi) {
            norm2 += std::norm(c);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : chi) {
            c *= inv;
        }
        out.coefficients.push_back(std::sqrt(lam));
        out.basis_a.push_back(std::move(phi));
        out.basis_b.push_back(std::move(chi));
    }
    return out;
}

PureState apply_on_qubits(const ComplexMatrix& u, const PureState& psi,
                          const std::vector<std::size_t>& targets, double unitary_tol) {
    const std::size_t n = psi.num_qubits();
    const std::size_t k = targets.size();
    if (k == 0) {
        throw std::invalid_argument("apply_on_qubits: no target qubits");
    }
    std::set<std::size_t> seen;
    for (const auto q : targets) {
        if (q < 1 || q > n) {
            throw std::out_of_range("apply_on_qubits: target qubit out of range");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument("apply_on_qubits: duplicate target qubit");
        }
    }
    const std::size_t du = std::size_t{1} << k;
    if (u.rows() != du || u.cols() != du) {
        throw std::invalid_argument("apply_on_qubits: gate dimension does not match target count");
    }
    if (u.unitarity_defect() > unitary_tol) {
        throw std::invalid_argument("apply_on_qubits: gate is not unitary");
    }

    // spread[s]: gate index s scattered onto the target bit positions
    std::vector<std::size_t> spread(du, 0);
    std::size_t mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
        mask |= std::size_t{1} << (n - targets[j]);
    }
    for (std::size_t s = 0; s < du; ++s) {
        std::size_t v = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((s >> (k - 1 - j)) & 1U) {
                v |= std::size_t{1} << (n - targets[j]);
            }
        }
        spread[s] = v;
    }

    std::vector<cplx> amps = psi.amplitudes();
    std::vector<cplx> gathered(du);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; ++base) {
        if ((base & mask) != 0) {
            continue;
        }
        for (std::size_t s = 0; s < du; ++s) {
            gathered[s] = amps[base | spread[s]];
        }
        for (std::size_t r = 0; r < du; ++r) {
            cplx acc(0.0, 0.0);
            for (std::size_t s = 0; s < du; ++s) {
                acc += u(r, s) * gathered[s];
            }
            amps[base | spread[r]] = acc;
        }
    }
    return PureState(n, std::move(amps), 1e-9);
}

ComplexMatrix pauli_word(std::size_t num_qubits,
                         const std::vector<std::pair<std::size_t, int>>& factors) {
    if (num_qubits == 0) {
        throw std::invalid_argument("pauli_word: register must have at least one qubit");
    }
    std::vector<int> pauli(num_qubits + 1, 0);
    std::set<std::size_t> seen;
    for (const auto& [q, k] : factors) {
        if (q < 1 || q > num_qubits) {
            throw std::out_of_range("pauli_word: qubit label out of range");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument("pauli_word: duplicate qubit label");
        }
        if (k < 0 || k > 3) {
            throw std::invalid_argument("pauli_word: Pauli index must be in {0,1,2,3}");
        }
        pauli[q] = k;
    }
    ComplexMatrix word = gates::sigma(pauli[1]);
    for (std::size_t q = 2; q <= num_qubits; ++q) {
        word = tensor(word, gates::sigma(pauli[q]));
    }
    return word;
}

}  // namespace gatecap::qla
