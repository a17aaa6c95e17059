#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gatecap/canonical.hpp"
#include "gatecap/ensembles.hpp"
#include "gatecap/entcap.hpp"
#include "gatecap/gates.hpp"
#include "gatecap/qla.hpp"
#include "gatecap/rng.hpp"
#include "test_util.hpp"

using namespace gatecap;
using testutil::random_state;

namespace {
constexpr double kPi4 = std::numbers::pi / 4.0;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// analytic decrease witness for U_d(pi/4,0,0): conj(U_d)|0000> puts the
// XX-rotated bell state (|00> + i|11>)/sqrt2 on the interaction qubits
PureState cnot_witness() {
    return PureState(4, {cplx(kInvSqrt2, 0), 0, 0, 0, 0, 0, cplx(0, kInvSqrt2), 0,
                         0, 0, 0, 0, 0, 0, 0, 0});
}

// Bell(1,3) (x) Bell(2,4): SWAP on (2,3) pulls both pairs onto one side
PureState swap_witness() {
    return PureState(4, {cplx(.5, 0), 0, 0, 0, 0, cplx(.5, 0), 0, 0, 0, 0, cplx(.5, 0), 0,
                         0, 0, 0, cplx(.5, 0)});
}

DensityMatrix pure_qubit(const std::vector<cplx>& amps) {
    return DensityMatrix::from_pure(PureState(1, amps));
}
}  // namespace

TEST_CASE("holevo information examples") {
    // orthogonal equiprobable pure states carry one full bit
    const std::vector<double> half{0.5, 0.5};
    CHECK(ensembles::holevo(half, {pure_qubit({1, 0}), pure_qubit({0, 1})}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // |0> vs |+>: average has eigenvalues 1/2 +- 1/(2 sqrt 2)
    const double expected = [] {
        const double hi = 0.5 + 0.5 * kInvSqrt2;
        const double lo = 0.5 - 0.5 * kInvSqrt2;
        return -(hi * std::log2(hi) + lo * std::log2(lo));
    }();
    CHECK(ensembles::holevo(half, {pure_qubit({1, 0}), pure_qubit({kInvSqrt2, kInvSqrt2})}) ==
          doctest::Approx(expected).epsilon(1e-10));

    // a single-state ensemble carries nothing
    CHECK(ensembles::holevo({1.0}, {pure_qubit({kInvSqrt2, kInvSqrt2})}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("holevo of N orthogonal equiprobable pure states is exactly log2 N") {
    for (const std::size_t n : {2, 4, 8, 16}) {
        std::vector<double> probs(n, 1.0 / static_cast<double>(n));
        std::vector<DensityMatrix> rhos;
        std::size_t qubits = 0;
        while ((std::size_t{1} << qubits) < n) ++qubits;
        for (std::size_t k = 0; k < n; ++k) {
            rhos.push_back(DensityMatrix::from_pure(PureState(qubits, k)));
        }
        CHECK(ensembles::holevo(probs, rhos) == doctest::Approx(std::log2(double(n))).epsilon(1e-12));
    }
}

TEST_CASE("holevo validates input") {
    CHECK_THROWS_AS(ensembles::holevo({0.5, 0.5},
                                      {pure_qubit({1, 0}),
                                       DensityMatrix::from_pure(PureState(2, 0))}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ensembles::holevo({0.7, 0.7}, {pure_qubit({1, 0}), pure_qubit({0, 1})}),
                    std::invalid_argument);
}

TEST_CASE("pauli twirl flattens every two-qubit state") {
    CHECK(ensembles::twirl_check(DensityMatrix(ComplexMatrix::identity(4) * cplx(0.25, 0.0))) <
          1e-15);
    CHECK(ensembles::twirl_check(DensityMatrix::from_pure(PureState(2, 0))) < 1e-12);

    Rng rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        CHECK(ensembles::twirl_check(testutil::random_density(2, rng)) < 1e-12);
    }
}

TEST_CASE("one-way ensemble from the CNOT-class witness") {
    const std::array<double, 3> alphas{kPi4, 0, 0};
    const auto ud = canonical::u_d(alphas);
    const PureState psi = cnot_witness();
    REQUIRE(entcap::delta_e(ud, psi) == doctest::Approx(-1.0).epsilon(1e-10));

    const auto ens = ensembles::build_one_way(alphas, psi);
    REQUIRE(ens.states.size() == 16);

    const auto entropies = ensembles::state_entropies(ens.states, true);
    ComplexMatrix avg(4, 4);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(entropies[k] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(entcap::delta_e(ud, ens.states[k]) == doctest::Approx(-1.0).epsilon(1e-6));
        avg += qla::reduced_density(ens.states[k], {3, 4}).matrix() * cplx(1.0 / 16.0, 0.0);
    }
    CHECK(frobenius_distance(avg, ComplexMatrix::identity(4) * cplx(0.25, 0.0)) < 1e-12);

    const auto rep = ensembles::gain_one_way(ud, ens);
    CHECK(rep.chi_before == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.chi_after == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.gain == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.first_term_residual < 1e-9);
    // second holevo term tracks the seed state's entanglement
    double mean_before = 0.0;
    double mean_after = 0.0;
    for (std::size_t k = 0; k < 16; ++k) {
        mean_before += rep.entropies_before[k] / 16.0;
        mean_after += rep.entropies_after[k] / 16.0;
    }
    CHECK(mean_before == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(mean_after == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("identity gate yields zero gain on any ensemble") {
    Rng rng(11);
    const auto ens = ensembles::build_one_way({0.3, 0.2, 0.1}, random_state(4, rng));
    const auto rep = ensembles::gain_one_way(ComplexMatrix::identity(4), ens);
    CHECK(std::abs(rep.gain) < 1e-10);
}

TEST_CASE("swap one-way construction gains two bits") {
    const std::array<double, 3> alphas{kPi4, kPi4, kPi4};
    const auto ud = canonical::u_d(alphas);
    const PureState psi = swap_witness();
    REQUIRE(entcap::delta_e(ud, psi) == doctest::Approx(-2.0).epsilon(1e-10));
    const auto rep = ensembles::gain_one_way(ud, ensembles::build_one_way(alphas, psi));
    CHECK(rep.gain == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("bidirectional ensemble for the CNOT class") {
    const std::array<double, 3> alphas{kPi4, 0, 0};
    const auto ud = canonical::u_d(alphas);
    const auto be = ensembles::build_bidirectional(alphas, cnot_witness());
    REQUIRE(be.states.size() == 256);

    // every state keeps the seed entanglement and loses E_U under U_d
    const auto entropies = ensembles::state_entropies(be.states, true);
    for (const double e : entropies) {
        CHECK(e == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (std::size_t k = 0; k < 256; k += 37) {
        CHECK(entcap::delta_e(ud, be.states[k]) == doctest::Approx(-1.0).epsilon(1e-6));
    }

    const auto rep = ensembles::gain_bidirectional(ud, be);
    CHECK(rep.right.gain == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.left.gain == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.total_gain == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.total_gain == rep.right.gain + rep.left.gain);  // by construction
    CHECK(rep.right.first_term_residual < 1e-9);
    CHECK(rep.left.first_term_residual < 1e-9);
}

TEST_CASE("alice and bob words commute: either application order matches") {
    Rng rng(13);
    const PureState psi = random_state(4, rng);
    for (const auto [ia, ipa, ib, ipb] :
         std::vector<std::array<int, 4>>{{1, 2, 3, 0}, {2, 2, 1, 1}, {3, 1, 2, 3}}) {
        auto word = [&](const PureState& s, int i, int ip) {
            PureState out = s;
            if (ip != 0) {
                out = qla::apply_on_qubits(gates::sigma(ip), out, {1});
                out = qla::apply_on_qubits(gates::sigma(ip), out, {4});
            }
            if (i != 0) {
                out = qla::apply_on_qubits(gates::sigma(i), out, {2});
                out = qla::apply_on_qubits(gates::sigma(i), out, {3});
            }
            return out;
        };
        const PureState ab = word(word(psi, ib, ipb), ia, ipa);
        const PureState ba = word(word(psi, ia, ipa), ib, ipb);
        // equal up to a global phase
        const cplx overlap = ab.inner_product(ba);
        CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
    }
}

TEST_CASE("bidirectional gain equals 2 E_U for the swap class") {
    const std::array<double, 3> alphas{kPi4, kPi4, kPi4};
    const auto ud = canonical::u_d(alphas);
    const auto be = ensembles::build_bidirectional(alphas, swap_witness());
    const auto rep = ensembles::gain_bidirectional(ud, be);
    CHECK(rep.total_gain == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("ensemble serialization round-trips") {
    const auto ens = ensembles::build_one_way({kPi4, 0, 0}, cnot_witness());
    const auto j = ensembles::to_json(ens);
    const auto back = ensembles::ensemble_from_json(j);
    REQUIRE(back.states.size() == ens.states.size());
    for (std::size_t k = 0; k < ens.states.size(); ++k) {
        CHECK(back.probs[k] == ens.probs[k]);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(std::abs(back.states[k].amplitude(i) - ens.states[k].amplitude(i)) < 1e-15);
        }
    }
    CHECK(j.at("qubit_order").get<std::string>().find("most significant") != std::string::npos);
}

TEST_CASE("ensemble constructions validate input") {
    CHECK_THROWS_AS(ensembles::build_one_way({0.1, 0, 0}, PureState(3)), std::invalid_argument);
    ensembles::Ensemble bad;
    bad.probs = {0.5, 0.6};
    bad.states = {PureState(4), PureState(4)};
    CHECK_THROWS_AS(ensembles::gain_one_way(gates::cnot(), bad), std::invalid_argument);
}

TEST_CASE("serial and parallel ensemble reductions agree bitwise") {
    const std::array<double, 3> alphas{0.5, 0.3, 0.1};
    const auto ud = canonical::u_d(alphas);
    Rng rng(17);
    const auto be = ensembles::build_bidirectional(alphas, random_state(4, rng));
    const auto par = ensembles::gain_bidirectional(ud, be, true);
    const auto ser = ensembles::gain_bidirectional(ud, be, false);
    CHECK(par.total_gain == ser.total_gain);
    CHECK(par.right.chi_before == ser.right.chi_before);
    CHECK(par.left.chi_after == ser.left.chi_after);
}
