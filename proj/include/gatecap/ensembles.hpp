#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatecap/complex_matrix.hpp"
#include "gatecap/states.hpp"

namespace gatecap::ensembles {

// Probability-weighted shared 4-qubit pure states over the fixed
// Alice {1,2} | Bob {3,4} cut.
struct Ensemble {
    std::vector<double> probs;
    std::vector<PureState> states;

    void validate() const;
};

// Doubly indexed grid: state (i,j) at index i*cols + j with weight
// row_probs[i] * col_probs[j].
struct BidirectionalEnsemble {
    std::vector<double> row_probs;
    std::vector<double> col_probs;
    std::vector<PureState> states;

    std::size_t rows() const { return row_probs.size(); }
    std::size_t cols() const { return col_probs.size(); }
    const PureState& state(std::size_t i, std::size_t j) const { return states[i * cols() + j]; }
    void validate() const;
};

struct GainReport {
    double chi_before = 0.0;
    double chi_after = 0.0;
    double gain = 0.0;
    std::vector<double> entropies_before;  // S(rho_i) per state
    std::vector<double> entropies_after;
    double first_term_residual = 0.0;  // max distance of averaged state from I/dim
};

struct BidirectionalGainReport {
    GainReport right;  // Alice -> Bob, conditioned on Bob's index
    GainReport left;   // Bob -> Alice, conditioned on Alice's index
    double total_gain = 0.0;
    double chi_both_before = 0.0;  // chi_right + chi_left before U
    double chi_both_after = 0.0;
};

// chi = S(sum p rho) - sum p S(rho), bits
double holevo(const std::vector<double>& probs, const std::vector<DensityMatrix>& rhos);

// ||(1/16) sum_{ii'} s_i s_i' rho s_i s_i' - Tr(rho) I/4||_F for a
// two-qubit rho; zero for every state.
double twirl_check(const DensityMatrix& rho);

// The 16 equiprobable states sigma_{i'}(1) sigma_i(2) sigma_i(3)
// sigma_{i'}(4) |Psi>, indexed s = 4*i' + i. Every word commutes with
// U_d(alphas), which is validated on entry.
Ensemble build_one_way(const std::array<double, 3>& u_d_alphas, const PureState& psi);

GainReport gain_one_way(const ComplexMatrix& u, const Ensemble& ensemble, bool parallel = true);

// 256 states: Alice's word (i,i') times Bob's word (j,j'), both of the
// same sigma_{i'}(1) sigma_i(2) sigma_i(3) sigma_{i'}(4) family.
BidirectionalEnsemble build_bidirectional(const std::array<double, 3>& u_d_alphas,
                                          const PureState& psi);

BidirectionalGainReport gain_bidirectional(const ComplexMatrix& u, const BidirectionalEnsemble& be,
                                           bool parallel = true);

// Batch entanglement entropies of states across the {1,2}|{3,4} cut;
// the OpenMP kernel writes per-index slots so the result is identical
// to the serial reference.
std::vector<double> state_entropies(const std::vector<PureState>& states, bool parallel);

nlohmann::json to_json(const Ensemble& e);
Ensemble ensemble_from_json(const nlohmann::json& j);

}  // namespace gatecap::ensembles
