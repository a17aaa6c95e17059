#include "gatecap/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gatecap/gates.hpp"
#include "gatecap/qla.hpp"

namespace gatecap::protocols {

namespace {

Bipartition run_cut(const Protocol& p) {
    std::set<std::size_t> alice;
    std::set<std::size_t> bob;
    for (std::size_t q = 1; q <= p.run_qubits(); ++q) {
        (p.is_alice(q) ? alice : bob).insert(q);
    }
    return Bipartition(std::move(alice), std::move(bob));
}

Bipartition audit_cut(const Protocol& p) {
    std::set<std::size_t> alice;
    std::set<std::size_t> bob;
    const std::size_t nr = p.run_qubits();
    for (std::size_t q = 1; q <= nr; ++q) {
        (p.is_alice(q) ? alice : bob).insert(q);
    }
    for (std::size_t k = 0; k < p.n_a; ++k) {
        alice.insert(nr + 1 + k);  // A3
    }
    for (std::size_t k = 0; k < p.n_b; ++k) {
        bob.insert(nr + p.n_a + 1 + k);  // B3
    }
    return Bipartition(std::move(alice), std::move(bob));
}

// The message registers enter in basis states, so the initial
// entanglement across the cut is the resource state's alone. The audit
// input only adds copy registers internal to each side, so the same
// value applies there.
double resource_entanglement(const Protocol& p) {
    if (p.a2 == 0 || p.b2 == 0) {
        return 0.0;
    }
    return qla::entanglement_entropy(p.resource,
                                     Bipartition::first_k(p.a2 + p.b2, p.a2));
}

PureState execute_steps(const Protocol& p, const ComplexMatrix& u, PureState state) {
    for (const auto& step : p.steps) {
        if (step.kind == Step::Kind::ApplyU) {
            state = qla::apply_on_qubits(u, state, step.targets);
        } else {
            state = qla::apply_on_qubits(step.matrix, state, step.targets);
        }
    }
    return state;
}

double readout_probability(const PureState& state, const std::vector<std::size_t>& x_out,
                           std::size_t x, const std::vector<std::size_t>& y_out, std::size_t y) {
    const std::size_t n = state.num_qubits();
    std::size_t mask = 0;
    std::size_t want = 0;
    for (std::size_t k = 0; k < x_out.size(); ++k) {
        const std::size_t pos = n - x_out[k];
        mask |= std::size_t{1} << pos;
        if ((x >> (x_out.size() - 1 - k)) & 1U) {
            want |= std::size_t{1} << pos;
        }
    }
    for (std::size_t k = 0; k < y_out.size(); ++k) {
        const std::size_t pos = n - y_out[k];
        mask |= std::size_t{1} << pos;
        if ((y >> (y_out.size() - 1 - k)) & 1U) {
            want |= std::size_t{1} << pos;
        }
    }
    double prob = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) == want) {
            prob += std::norm(state.amplitude(i));
        }
    }
    return prob;
}

}  // namespace

std::size_t Protocol::uses_of_u() const {
    std::size_t t = 0;
    for (const auto& s : steps) {
        if (s.kind == Step::Kind::ApplyU) {
            ++t;
        }
    }
    return t;
}

void Protocol::validate() const {
    if (resource.num_qubits() != a2 + b2) {
        throw std::invalid_argument("protocol: resource state size must be a2 + b2 qubits");
    }
    if (x_out.size() != n_a || y_out.size() != n_b) {
        throw std::invalid_argument("protocol: output register sizes must match n_a/n_b");
    }
    for (const auto q : x_out) {
        if (!is_bob(q)) {
            throw std::invalid_argument("protocol: x_out must lie on Bob's side");
        }
    }
    for (const auto q : y_out) {
        if (!is_alice(q)) {
            throw std::invalid_argument("protocol: y_out must lie on Alice's side");
        }
    }
    for (const auto& step : steps) {
        for (const auto q : step.targets) {
            if (q < 1 || q > run_qubits()) {
                throw std::out_of_range("protocol: step target out of range");
            }
        }
        if (step.kind == Step::Kind::ApplyU) {
            if (step.targets.size() != 2 || !is_alice(step.targets[0]) || !is_bob(step.targets[1])) {
                throw std::invalid_argument(
                    "protocol: interaction step needs one Alice and one Bob qubit");
            }
        } else {
            const bool want_alice = step.side == Step::Side::Alice;
            for (const auto q : step.targets) {
                if (want_alice != is_alice(q)) {
                    throw std::invalid_argument(
                        "protocol: local step touches the other side of the cut");
                }
            }
            const std::size_t k = step.targets.size();
            if (step.matrix.rows() != (std::size_t{1} << k) || !step.matrix.is_square()) {
                throw std::invalid_argument("protocol: local gate dimension mismatch");
            }
        }
    }
}

RunResult run_protocol(const Protocol& p, const ComplexMatrix& u, std::size_t x, std::size_t y) {
    p.validate();
    if (x >= (std::size_t{1} << p.n_a) || y >= (std::size_t{1} << p.n_b)) {
        throw std::out_of_range("run_protocol: message out of range");
    }
    const PureState initial =
        PureState(p.n_a, x).tensor_with(p.resource).tensor_with(PureState(p.n_b, y));
    const double e_in = resource_entanglement(p);

    RunResult r;
    r.output = execute_steps(p, u, initial);
    r.fidelity = readout_probability(r.output, p.x_out, x, p.y_out, y);
    r.delta_e = qla::entanglement_entropy(r.output, run_cut(p)) - e_in;
    return r;
}

AuditReport superposition_audit(const Protocol& p, const ComplexMatrix& u, bool parallel) {
    p.validate();
    const std::size_t pairs = std::size_t{1} << (p.n_a + p.n_b);

    AuditReport rep;
    rep.fidelities.resize(pairs);
    rep.delta_e_xy.resize(pairs);
    rep.t = p.uses_of_u();
    rep.rate = rep.t == 0 ? 0.0 : static_cast<double>(p.n_a + p.n_b) / static_cast<double>(rep.t);

    auto run_pair = [&](std::size_t idx) {
        const std::size_t x = idx >> p.n_b;
        const std::size_t y = idx & ((std::size_t{1} << p.n_b) - 1);
        const RunResult r = run_protocol(p, u, x, y);
        rep.fidelities[idx] = r.fidelity;
        rep.delta_e_xy[idx] = r.delta_e;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs); ++i) {
            run_pair(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < pairs; ++i) {
            run_pair(i);
        }
    }

    bool error_free = true;
    for (const double f : rep.fidelities) {
        if (f < 1.0 - 1e-10) {
            error_free = false;
        }
    }
    if (!error_free) {
        std::ostringstream msg;
        msg << "superposition_audit: protocol '" << p.name
            << "' is not error-free; per-message fidelities:";
        for (std::size_t idx = 0; idx < pairs; ++idx) {
            msg << "\n  x=" << (idx >> p.n_b) << " y=" << (idx & ((std::size_t{1} << p.n_b) - 1))
                << " fidelity=" << rep.fidelities[idx];
        }
        throw std::runtime_error(msg.str());
    }

    double mean = 0.0;
    for (const double d : rep.delta_e_xy) {
        mean += d;
    }
    mean /= static_cast<double>(pairs);
    rep.mean_delta_e_xy = mean;

    // coherent run: messages maximally entangled with appended copies
    const std::size_t n = p.run_qubits() + p.n_a + p.n_b;
    const std::size_t res_dim = std::size_t{1} << (p.a2 + p.b2);
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(p.n_a + p.n_b));
    std::vector<cplx> amps(std::size_t{1} << n, cplx(0.0, 0.0));
    const std::size_t res_shift = n - p.n_a - p.a2 - p.b2;
    for (std::size_t x = 0; x < (std::size_t{1} << p.n_a); ++x) {
        for (std::size_t y = 0; y < (std::size_t{1} << p.n_b); ++y) {
            const std::size_t base = (x << (n - p.n_a)) | (y << (p.n_a + p.n_b)) |
                                     (x << p.n_b) | y;
            for (std::size_t rix = 0; rix < res_dim; ++rix) {
                const cplx a = p.resource.amplitude(rix);
                if (a != cplx(0.0, 0.0)) {
                    amps[base | (rix << res_shift)] = a * scale;
                }
            }
        }
    }
    PureState coherent(n, std::move(amps));
    coherent = execute_steps(p, u, std::move(coherent));

    const double e_in = resource_entanglement(p);
    const double e_out = qla::entanglement_entropy(coherent, audit_cut(p));
    rep.delta_e_superposition = e_out - e_in;
    rep.identity_residual = std::abs(rep.delta_e_superposition -
                                     static_cast<double>(p.n_a + p.n_b) - rep.mean_delta_e_xy);
    return rep;
}

namespace {

ComplexMatrix parse_matrix(const nlohmann::json& rows) {
    const std::size_t r = rows.size();
    if (r == 0) {
        throw std::invalid_argument("protocol: empty matrix");
    }
    const std::size_t c = rows.at(0).size();
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const auto& row = rows.at(i);
        if (row.size() != c) {
            throw std::invalid_argument("protocol: ragged matrix");
        }
        for (std::size_t j = 0; j < c; ++j) {
            const auto& e = row.at(j);
            m(i, j) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

PureState resource_from_bell_pairs(const Protocol& p, const nlohmann::json& pairs) {
    PureState res(p.a2 + p.b2);
    std::set<std::size_t> used;
    for (const auto& pair : pairs) {
        const std::size_t qa = pair.at(0).get<std::size_t>();
        const std::size_t qb = pair.at(1).get<std::size_t>();
        if (qa <= p.n_a || qa > p.n_a + p.a2 || qb <= p.n_a + p.a2 ||
            qb > p.n_a + p.a2 + p.b2) {
            throw std::invalid_argument("protocol: bell pair must join an A2 and a B2 qubit");
        }
        if (!used.insert(qa).second || !used.insert(qb).second) {
            throw std::invalid_argument("protocol: qubit used by two bell pairs");
        }
        const std::size_t la = qa - p.n_a;  // local label in the resource register
        const std::size_t lb = qb - p.n_a;
        res = qla::apply_on_qubits(gates::hadamard(), res, {la});
        res = qla::apply_on_qubits(gates::cnot(), res, {la, lb});
    }
    return res;
}

}  // namespace

Protocol parse_protocol(const nlohmann::json& j) {
    Protocol p;
    p.name = j.value("name", "unnamed");
    p.n_a = j.at("n_a").get<std::size_t>();
    p.n_b = j.at("n_b").get<std::size_t>();
    p.a2 = j.at("a2").get<std::size_t>();
    p.b2 = j.at("b2").get<std::size_t>();
    p.x_out = j.value("x_out", std::vector<std::size_t>{});
    p.y_out = j.value("y_out", std::vector<std::size_t>{});

    p.resource = PureState(p.a2 + p.b2);
    if (j.contains("resource")) {
        const auto& res = j.at("resource");
        if (res.contains("bell_pairs")) {
            p.resource = resource_from_bell_pairs(p, res.at("bell_pairs"));
        } else if (res.contains("amplitudes")) {
            std::vector<cplx> amps;
            for (const auto& e : res.at("amplitudes")) {
                amps.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
            }
            p.resource = PureState(p.a2 + p.b2, std::move(amps));
        } else {
            throw std::invalid_argument("protocol: resource needs bell_pairs or amplitudes");
        }
    }

    for (const auto& sj : j.at("steps")) {
        Step s;
        if (sj.contains("u")) {
            s.kind = Step::Kind::ApplyU;
            s.targets = sj.at("u").get<std::vector<std::size_t>>();
        } else {
            s.kind = Step::Kind::Local;
            s.targets = sj.at("targets").get<std::vector<std::size_t>>();
            const std::string side = sj.at("side").get<std::string>();
            if (side == "alice") {
                s.side = Step::Side::Alice;
            } else if (side == "bob") {
                s.side = Step::Side::Bob;
            } else {
                throw std::invalid_argument("protocol: side must be 'alice' or 'bob'");
            }
            if (sj.contains("gate")) {
                const auto named = gates::by_name(sj.at("gate").get<std::string>());
                if (!named) {
                    throw std::invalid_argument("protocol: unknown gate name");
                }
                s.matrix = *named;
            } else if (sj.contains("matrix")) {
                s.matrix = parse_matrix(sj.at("matrix"));
            } else {
                throw std::invalid_argument("protocol: step needs 'u', 'gate' or 'matrix'");
            }
        }
        p.steps.push_back(std::move(s));
    }
    p.validate();
    return p;
}

Protocol load_protocol(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open protocol file: " + path);
    }
    nlohmann::json j;
    in >> j;
    return parse_protocol(j);
}

Protocol empty_protocol() {
    Protocol p;
    p.name = "empty";
    p.a2 = 1;
    p.b2 = 1;
    p.resource = PureState(2);
    p.validate();
    return p;
}

Protocol one_way_cnot_protocol() {
    Protocol p;
    p.name = "one_way_cnot";
    p.n_a = 1;
    p.b2 = 1;
    p.resource = PureState(1);
    p.x_out = {2};
    Step s;
    s.kind = Step::Kind::ApplyU;
    s.targets = {1, 2};
    p.steps.push_back(std::move(s));
    p.validate();
    return p;
}

Protocol swap_superdense_protocol() {
    // A1 = {1,2}, A2 = {3,4,5,6}, B2 = {7,8,9,10}, B1 = {11,12}.
    // Four prior Bell pairs (3,7) (4,8) (5,9) (6,10). Alice superdense-
    // encodes x on her halves 3 and 5, Bob encodes y on his halves 8 and
    // 10; two U = SWAP uses exchange the encoded qubits; both sides Bell-
    // decode. Each basis run consumes all four ebits.
    Protocol p;
    p.name = "swap_superdense";
    p.n_a = 2;
    p.n_b = 2;
    p.a2 = 4;
    p.b2 = 4;
    {
        PureState res(8);
        for (const auto& [qa, qb] : std::vector<std::pair<std::size_t, std::size_t>>{
                 {1, 5}, {2, 6}, {3, 7}, {4, 8}}) {  // local labels inside A2B2
            res = qla::apply_on_qubits(gates::hadamard(), res, {qa});
            res = qla::apply_on_qubits(gates::cnot(), res, {qa, qb});
        }
        p.resource = std::move(res);
    }
    p.x_out = {8, 7};
    p.y_out = {3, 4};

    auto local = [&](const ComplexMatrix& m, std::vector<std::size_t> t, Step::Side side) {
        Step s;
        s.kind = Step::Kind::Local;
        s.matrix = m;
        s.targets = std::move(t);
        s.side = side;
        p.steps.push_back(std::move(s));
    };
    auto use_u = [&](std::size_t qa, std::size_t qb) {
        Step s;
        s.kind = Step::Kind::ApplyU;
        s.targets = {qa, qb};
        p.steps.push_back(std::move(s));
    };

    // encode: bit 1 -> Z, bit 2 -> X on both redundant carriers
    local(gates::cz(), {1, 3}, Step::Side::Alice);
    local(gates::cnot(), {2, 3}, Step::Side::Alice);
    local(gates::cz(), {1, 5}, Step::Side::Alice);
    local(gates::cnot(), {2, 5}, Step::Side::Alice);
    local(gates::cz(), {11, 8}, Step::Side::Bob);
    local(gates::cnot(), {12, 8}, Step::Side::Bob);
    local(gates::cz(), {11, 10}, Step::Side::Bob);
    local(gates::cnot(), {12, 10}, Step::Side::Bob);
    // exchange the encoded carriers
    use_u(3, 8);
    use_u(5, 10);
    // Bell decodes: received carrier against the kept pair half
    local(gates::cnot(), {8, 7}, Step::Side::Bob);
    local(gates::hadamard(), {8}, Step::Side::Bob);
    local(gates::cnot(), {10, 9}, Step::Side::Bob);
    local(gates::hadamard(), {10}, Step::Side::Bob);
    local(gates::cnot(), {3, 4}, Step::Side::Alice);
    local(gates::hadamard(), {3}, Step::Side::Alice);
    local(gates::cnot(), {5, 6}, Step::Side::Alice);
    local(gates::hadamard(), {5}, Step::Side::Alice);

    p.validate();
    return p;
}

}  // namespace gatecap::protocols
