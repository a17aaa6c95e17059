#include "gatecap/ensembles.hpp"

#include <cmath>
#include <stdexcept>

#include "gatecap/canonical.hpp"
#include "gatecap/eigen_jacobi.hpp"
#include "gatecap/gates.hpp"
#include "gatecap/qla.hpp"

namespace gatecap::ensembles {

namespace {

const std::set<std::size_t> kAlice{1, 2};
const std::set<std::size_t> kBob{3, 4};

void check_probs(const std::vector<double>& probs) {
    double sum = 0.0;
    for (const double p : probs) {
        if (p < 0.0) {
            throw std::invalid_argument("ensemble: negative probability");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("ensemble: probabilities must sum to 1");
    }
}

// sigma_{i'}(1) sigma_i(2) sigma_i(3) sigma_{i'}(4) |psi>
PureState apply_word(const PureState& psi, int i, int ip) {
    PureState out = psi;
    if (ip != 0) {
        out = qla::apply_on_qubits(gates::sigma(ip), out, {1});
        out = qla::apply_on_qubits(gates::sigma(ip), out, {4});
    }
    if (i != 0) {
        out = qla::apply_on_qubits(gates::sigma(i), out, {2});
        out = qla::apply_on_qubits(gates::sigma(i), out, {3});
    }
    return out;
}

void check_word_commutation(const std::array<double, 3>& alphas) {
    const ComplexMatrix ud = canonical::u_d(alphas);
    for (int i = 0; i < 4; ++i) {
        const ComplexMatrix w = tensor(gates::sigma(i), gates::sigma(i));
        if (frobenius_distance(ud * w, w * ud) > 1e-10) {
            throw std::runtime_error("build ensemble: Pauli word fails to commute with U_d");
        }
    }
}

ComplexMatrix average_state(const std::vector<double>& probs,
                            const std::vector<DensityMatrix>& rhos) {
    ComplexMatrix avg(rhos[0].dim(), rhos[0].dim());
    for (std::size_t k = 0; k < rhos.size(); ++k) {
        avg += rhos[k].matrix() * cplx(probs[k], 0.0);
    }
    return avg;
}

double max_identity_distance(const ComplexMatrix& avg) {
    const std::size_t d = avg.rows();
    return frobenius_distance(avg, ComplexMatrix::identity(d) * cplx(1.0 / d, 0.0));
}

std::vector<DensityMatrix> bob_reductions(const std::vector<PureState>& states, bool parallel) {
    std::vector<DensityMatrix> rhos(states.size(), DensityMatrix::from_pure(PureState(2)));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(states.size()); ++k) {
            rhos[k] = qla::reduced_density(states[k], kBob);
        }
    } else {
        for (std::size_t k = 0; k < states.size(); ++k) {
            rhos[k] = qla::reduced_density(states[k], kBob);
        }
    }
    return rhos;
}

std::vector<PureState> apply_gate_all(const ComplexMatrix& u, const std::vector<PureState>& states,
                                      bool parallel) {
    std::vector<PureState> out(states.size());
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(states.size()); ++k) {
            out[k] = qla::apply_on_qubits(u, states[k], {2, 3});
        }
    } else {
        for (std::size_t k = 0; k < states.size(); ++k) {
            out[k] = qla::apply_on_qubits(u, states[k], {2, 3});
        }
    }
    return out;
}

}  // namespace

void Ensemble::validate() const {
    if (probs.size() != states.size() || states.empty()) {
        throw std::invalid_argument("ensemble: probability/state count mismatch");
    }
    check_probs(probs);
    for (const auto& s : states) {
        if (s.num_qubits() != 4) {
            throw std::invalid_argument("ensemble: states must have 4 qubits");
        }
    }
}

void BidirectionalEnsemble::validate() const {
    if (states.size() != row_probs.size() * col_probs.size() || states.empty()) {
        throw std::invalid_argument("bidirectional ensemble: incomplete grid");
    }
    check_probs(row_probs);
    check_probs(col_probs);
    for (const auto& s : states) {
        if (s.num_qubits() != 4) {
            throw std::invalid_argument("bidirectional ensemble: states must have 4 qubits");
        }
    }
}

double holevo(const std::vector<double>& probs, const std::vector<DensityMatrix>& rhos) {
    if (probs.size() != rhos.size() || probs.empty()) {
        throw std::invalid_argument("holevo: probability/state count mismatch");
    }
    check_probs(probs);
    const std::size_t d = rhos[0].dim();
    for (const auto& r : rhos) {
        if (r.dim() != d) {
            throw std::invalid_argument("holevo: states must share one dimension");
        }
    }
    const ComplexMatrix avg = average_state(probs, rhos);
    double chi = qla::vn_entropy(DensityMatrix(avg));
    for (std::size_t k = 0; k < rhos.size(); ++k) {
        if (probs[k] > 0.0) {
            chi -= probs[k] * qla::vn_entropy(rhos[k]);
        }
    }
    return chi;
}

double twirl_check(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("twirl_check: expected a two-qubit density matrix");
    }
    ComplexMatrix acc(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int ip = 0; ip < 4; ++ip) {
            const ComplexMatrix w = tensor(gates::sigma(i), gates::sigma(ip));
            acc += w * rho.matrix() * w;
        }
    }
    acc *= cplx(1.0 / 16.0, 0.0);
    const cplx tr = rho.matrix().trace();
    return frobenius_distance(acc, ComplexMatrix::identity(4) * (tr / 4.0));
}

Ensemble build_one_way(const std::array<double, 3>& u_d_alphas, const PureState& psi) {
    if (psi.num_qubits() != 4) {
        throw std::invalid_argument("build_one_way: seed state must have 4 qubits");
    }
    check_word_commutation(u_d_alphas);
    Ensemble e;
    e.probs.assign(16, 1.0 / 16.0);
    e.states.reserve(16);
    for (int ip = 0; ip < 4; ++ip) {
        for (int i = 0; i < 4; ++i) {
            e.states.push_back(apply_word(psi, i, ip));
        }
    }
    return e;
}

GainReport gain_one_way(const ComplexMatrix& u, const Ensemble& ensemble, bool parallel) {
    ensemble.validate();
    if (u.rows() != 4 || u.cols() != 4 || u.unitarity_defect() > 1e-10) {
        throw std::invalid_argument("gain_one_way: gate must be a 4x4 unitary");
    }

    const auto rhos_before = bob_reductions(ensemble.states, parallel);
    const auto after_states = apply_gate_all(u, ensemble.states, parallel);
    const auto rhos_after = bob_reductions(after_states, parallel);

    const std::size_t count = ensemble.states.size();
    GainReport rep;
    rep.entropies_before.resize(count);
    rep.entropies_after.resize(count);
    double avg_before = 0.0;
    double avg_after = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        rep.entropies_before[k] = qla::vn_entropy(rhos_before[k]);
        rep.entropies_after[k] = qla::vn_entropy(rhos_after[k]);
        avg_before += ensemble.probs[k] * rep.entropies_before[k];
        avg_after += ensemble.probs[k] * rep.entropies_after[k];
    }
    const ComplexMatrix mix_before = average_state(ensemble.probs, rhos_before);
    const ComplexMatrix mix_after = average_state(ensemble.probs, rhos_after);
    rep.chi_before = qla::vn_entropy(DensityMatrix(mix_before)) - avg_before;
    rep.chi_after = qla::vn_entropy(DensityMatrix(mix_after)) - avg_after;
    rep.gain = rep.chi_after - rep.chi_before;
    rep.first_term_residual =
        std::max(max_identity_distance(mix_before), max_identity_distance(mix_after));
    return rep;
}

BidirectionalEnsemble build_bidirectional(const std::array<double, 3>& u_d_alphas,
                                          const PureState& psi) {
    if (psi.num_qubits() != 4) {
        throw std::invalid_argument("build_bidirectional: seed state must have 4 qubits");
    }
    check_word_commutation(u_d_alphas);
    BidirectionalEnsemble be;
    be.row_probs.assign(16, 1.0 / 16.0);
    be.col_probs.assign(16, 1.0 / 16.0);
    be.states.reserve(256);
    // row index (Alice) s_a = 4*i' + i, column (Bob) s_b = 4*j' + j
    for (int ipa = 0; ipa < 4; ++ipa) {
        for (int ia = 0; ia < 4; ++ia) {
            const PureState alice_encoded = apply_word(psi, ia, ipa);
            for (int ipb = 0; ipb < 4; ++ipb) {
                for (int ib = 0; ib < 4; ++ib) {
                    be.states.push_back(apply_word(alice_encoded, ib, ipb));
                }
            }
        }
    }
    return be;
}

namespace {

// Eq-style conditional Holevo: sum_j q_j [S(sum_i p_i rho_ij) - sum_i p_i S(rho_ij)]
// where `rho(i,j)` enumerates the traced states and `by_rows` picks which
// index is conditioned on.
double conditional_holevo(const std::vector<double>& outer, const std::vector<double>& inner,
                          const std::vector<DensityMatrix>& rhos,
                          const std::vector<double>& entropies, std::size_t rows, std::size_t cols,
                          bool condition_on_cols) {
    double chi = 0.0;
    const std::size_t outer_count = condition_on_cols ? cols : rows;
    const std::size_t inner_count = condition_on_cols ? rows : cols;
    for (std::size_t o = 0; o < outer_count; ++o) {
        ComplexMatrix avg(rhos[0].dim(), rhos[0].dim());
        double mean_entropy = 0.0;
        for (std::size_t in = 0; in < inner_count; ++in) {
            const std::size_t idx = condition_on_cols ? in * cols + o : o * cols + in;
            avg += rhos[idx].matrix() * cplx(inner[in], 0.0);
            mean_entropy += inner[in] * entropies[idx];
        }
        chi += outer[o] * (qla::vn_entropy(DensityMatrix(avg)) - mean_entropy);
    }
    return chi;
}

std::vector<DensityMatrix> reductions(const std::vector<PureState>& states,
                                      const std::set<std::size_t>& keep, bool parallel) {
    std::vector<DensityMatrix> rhos(states.size(), DensityMatrix::from_pure(PureState(2)));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(states.size()); ++k) {
            rhos[k] = qla::reduced_density(states[k], keep);
        }
    } else {
        for (std::size_t k = 0; k < states.size(); ++k) {
            rhos[k] = qla::reduced_density(states[k], keep);
        }
    }
    return rhos;
}

std::vector<double> spectra_entropies(const std::vector<DensityMatrix>& rhos, bool parallel) {
    std::vector<double> out(rhos.size());
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(rhos.size()); ++k) {
            out[k] = qla::vn_entropy(rhos[k]);
        }
    } else {
        for (std::size_t k = 0; k < rhos.size(); ++k) {
            out[k] = qla::vn_entropy(rhos[k]);
        }
    }
    return out;
}

struct DirectionalChi {
    double right = 0.0;
    double left = 0.0;
    double max_row_residual = 0.0;  // distance of row/col averages from I/4
    double max_col_residual = 0.0;
};

DirectionalChi directional_chis(const BidirectionalEnsemble& be,
                                const std::vector<PureState>& states, bool parallel) {
    const auto bob = reductions(states, kBob, parallel);
    const auto alice = reductions(states, kAlice, parallel);
    const auto entropy_bob = spectra_entropies(bob, parallel);
    const auto entropy_alice = spectra_entropies(alice, parallel);

    DirectionalChi out;
    // right: condition on Bob's message j, ensemble over Alice's i (Bob-side states)
    out.right = conditional_holevo(be.col_probs, be.row_probs, bob, entropy_bob, be.rows(),
                                   be.cols(), true);
    // left: condition on Alice's i, ensemble over Bob's j (Alice-side states)
    out.left = conditional_holevo(be.row_probs, be.col_probs, alice, entropy_alice, be.rows(),
                                  be.cols(), false);

    for (std::size_t j = 0; j < be.cols(); ++j) {
        ComplexMatrix avg(4, 4);
        for (std::size_t i = 0; i < be.rows(); ++i) {
            avg += bob[i * be.cols() + j].matrix() * cplx(be.row_probs[i], 0.0);
        }
        out.max_row_residual = std::max(out.max_row_residual, max_identity_distance(avg));
    }
    for (std::size_t i = 0; i < be.rows(); ++i) {
        ComplexMatrix avg(4, 4);
        for (std::size_t j = 0; j < be.cols(); ++j) {
            avg += alice[i * be.cols() + j].matrix() * cplx(be.col_probs[j], 0.0);
        }
        out.max_col_residual = std::max(out.max_col_residual, max_identity_distance(avg));
    }
    return out;
}

}  // namespace

BidirectionalGainReport gain_bidirectional(const ComplexMatrix& u, const BidirectionalEnsemble& be,
                                           bool parallel) {
    be.validate();
    if (u.rows() != 4 || u.cols() != 4 || u.unitarity_defect() > 1e-10) {
        throw std::invalid_argument("gain_bidirectional: gate must be a 4x4 unitary");
    }
    const auto after_states = apply_gate_all(u, be.states, parallel);
    const auto before = directional_chis(be, be.states, parallel);
    const auto after = directional_chis(be, after_states, parallel);

    BidirectionalGainReport rep;
    rep.right.chi_before = before.right;
    rep.right.chi_after = after.right;
    rep.right.gain = after.right - before.right;
    rep.right.first_term_residual = std::max(before.max_row_residual, after.max_row_residual);
    rep.left.chi_before = before.left;
    rep.left.chi_after = after.left;
    rep.left.gain = after.left - before.left;
    rep.left.first_term_residual = std::max(before.max_col_residual, after.max_col_residual);
    rep.total_gain = rep.right.gain + rep.left.gain;
    rep.chi_both_before = before.right + before.left;
    rep.chi_both_after = after.right + after.left;
    return rep;
}

std::vector<double> state_entropies(const std::vector<PureState>& states, bool parallel) {
    const Bipartition cut = Bipartition::first_k(4, 2);
    std::vector<double> out(states.size());
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(states.size()); ++k) {
            out[k] = qla::entanglement_entropy(states[k], cut);
        }
    } else {
        for (std::size_t k = 0; k < states.size(); ++k) {
            out[k] = qla::entanglement_entropy(states[k], cut);
        }
    }
    return out;
}

nlohmann::json to_json(const Ensemble& e) {
    nlohmann::json j;
    j["qubit_order"] = "qubit 1 is the most significant amplitude-index bit";
    j["cut"] = {{"alice", {1, 2}}, {"bob", {3, 4}}};
    j["probabilities"] = e.probs;
    nlohmann::json states = nlohmann::json::array();
    for (const auto& s : e.states) {
        nlohmann::json amps = nlohmann::json::array();
        for (const auto& a : s.amplitudes()) {
            amps.push_back({a.real(), a.imag()});
        }
        states.push_back(std::move(amps));
    }
    j["states"] = std::move(states);
    return j;
}

Ensemble ensemble_from_json(const nlohmann::json& j) {
    Ensemble e;
    e.probs = j.at("probabilities").get<std::vector<double>>();
    for (const auto& amps : j.at("states")) {
        std::vector<cplx> v;
        v.reserve(amps.size());
        for (const auto& pair : amps) {
            v.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        }
        if (v.size() != 16) {
            throw std::invalid_argument("ensemble_from_json: states must have 16 amplitudes");
        }
        e.states.emplace_back(4, std::move(v));
    }
    e.validate();
    return e;
}

}  // namespace gatecap::ensembles
