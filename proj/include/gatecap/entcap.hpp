#pragma once

#include <cstdint>
#include <vector>

#include "gatecap/complex_matrix.hpp"
#include "gatecap/states.hpp"

namespace gatecap::entcap {

enum class Direction { Increase, Decrease };

// Multi-start gradient-ascent settings. Restart r draws its start point
// from seed + r, so results are independent of thread scheduling.
struct OptimizerConfig {
    int restarts = 32;
    int max_iters = 5000;
    double grad_tol = 1e-7;
    double fd_step = 1e-6;  // central-difference step in the 32 reals
    std::uint64_t seed = 20240817;
    bool parallel = true;
};

struct CapabilityResult {
    double value = 0.0;          // ebits
    PureState argmax_state;      // 4-qubit witness
    Direction direction = Direction::Increase;
    int restarts_used = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

// E(U psi) - E(psi) across the {1,2}|{3,4} cut, U acting on qubits (2,3).
double delta_e(const ComplexMatrix& u, const PureState& psi);

// Maximal one-use entanglement increase (or decrease) of `u` over 4-qubit
// pure states with one ancilla qubit per side.
CapabilityResult capability(const ComplexMatrix& u, Direction direction,
                            const OptimizerConfig& config = {});

// Plain-loop reference for the OpenMP restart sweep; bit-identical output.
CapabilityResult capability_serial(const ComplexMatrix& u, Direction direction,
                                   OptimizerConfig config = {});

struct RandomSearchResult {
    double value = 0.0;
    PureState argmax_state;
    std::uint64_t samples = 0;
};

// Seeded random-sampling lower bound used as the acceptance oracle for
// the optimizer. Chunked so the reduction is deterministic under OpenMP.
RandomSearchResult random_search(const ComplexMatrix& u, Direction direction,
                                 std::uint64_t samples, std::uint64_t seed, bool parallel = true);

struct SymmetryReport {
    double e_u = 0.0;
    double e_u_minus = 0.0;
    double gap = 0.0;               // |E_U - E_U^-|
    double witness_delta = 0.0;     // delta_e(U_d, conj(U_d) conj(Psi))
    double witness_residual = 0.0;  // |witness_delta + E_U|
    CapabilityResult increase;
    CapabilityResult decrease;
};

// Verifies E_U = E_U^- for a gate already in canonical U_d form, plus the
// conjugate-witness identity delta_e(U_d, conj(U_d) conj(Psi)) = -E_U.
SymmetryReport symmetry_check(const ComplexMatrix& u_d_matrix, const OptimizerConfig& config = {});

}  // namespace gatecap::entcap
