#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatecap/complex_matrix.hpp"
#include "gatecap/states.hpp"

namespace gatecap::protocols {

// Register layout (1-based labels, qubit 1 most significant):
//   A1 = 1..n_a                  Alice's message in
//   A2 = n_a+1 .. n_a+a2         Alice's ancilla / resource half
//   B2 = .. +b2                  Bob's ancilla / resource half
//   B1 = .. +n_b                 Bob's message in
// The superposition audit appends copy registers A3 (n_a) and B3 (n_b)
// after B1, leaving all step targets valid.
struct Step {
    enum class Kind { Local, ApplyU };
    enum class Side { Alice, Bob };

    Kind kind = Kind::Local;
    Side side = Side::Alice;      // for Local steps
    ComplexMatrix matrix;         // for Local steps
    std::vector<std::size_t> targets;
};

struct Protocol {
    std::string name;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    std::size_t a2 = 0;
    std::size_t b2 = 0;
    PureState resource;               // on A2 then B2, |0..0> by default
    std::vector<std::size_t> x_out;   // n_a labels on Bob's side holding x at the end
    std::vector<std::size_t> y_out;   // n_b labels on Alice's side holding y
    std::vector<Step> steps;

    std::size_t run_qubits() const { return n_a + a2 + b2 + n_b; }
    std::size_t uses_of_u() const;
    bool is_alice(std::size_t q) const { return q >= 1 && q <= n_a + a2; }
    bool is_bob(std::size_t q) const { return q > n_a + a2 && q <= run_qubits(); }

    void validate() const;
};

struct RunResult {
    PureState output;
    double fidelity = 0.0;   // joint probability of reading (x, y) on the out registers
    double delta_e = 0.0;    // entanglement change across the Alice|Bob cut
};

// Execute on basis messages x (n_a bits) and y (n_b bits), given the
// bound interaction gate `u` for ApplyU steps.
RunResult run_protocol(const Protocol& p, const ComplexMatrix& u, std::size_t x, std::size_t y);

struct AuditReport {
    std::vector<double> fidelities;   // indexed (x << n_b) | y
    std::vector<double> delta_e_xy;
    double mean_delta_e_xy = 0.0;
    double delta_e_superposition = 0.0;
    double identity_residual = 0.0;   // |dE - (n_a+n_b) - mean dE_xy|
    std::size_t t = 0;                // uses of U
    double rate = 0.0;                // (n_a+n_b)/t, 0 when t = 0
};

// Runs every message pair (refusing, with the fidelity table in the
// message, if any run is not error-free), then the coherent
// superposition input with maximally entangled copy registers.
AuditReport superposition_audit(const Protocol& p, const ComplexMatrix& u, bool parallel = true);

Protocol parse_protocol(const nlohmann::json& j);
Protocol load_protocol(const std::string& path);

// Shipped protocols.
Protocol empty_protocol();
Protocol one_way_cnot_protocol();
Protocol swap_superdense_protocol();

}  // namespace gatecap::protocols
