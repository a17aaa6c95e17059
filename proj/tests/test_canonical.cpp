#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gatecap/canonical.hpp"
#include "gatecap/gates.hpp"
#include "gatecap/rng.hpp"
#include "test_util.hpp"

using namespace gatecap;
using testutil::random_su2;

namespace {
constexpr double kPi4 = std::numbers::pi / 4.0;

ComplexMatrix dressed(const ComplexMatrix& core, Rng& rng) {
    return tensor(random_su2(rng), random_su2(rng)) * core *
           tensor(random_su2(rng), random_su2(rng));
}
}  // namespace

TEST_CASE("u_d basics") {
    CHECK(frobenius_distance(canonical::u_d({0, 0, 0}), ComplexMatrix::identity(4)) < 1e-15);

    // diagonal in the magic basis for arbitrary coefficients
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const std::array<double, 3> a{rng.normal(), rng.normal(), rng.normal()};
        const auto ud = canonical::u_d(a);
        CHECK(ud.unitarity_defect() < 1e-13);
        const auto& b = gates::magic_basis();
        const auto diag = b.adjoint() * ud * b;
        double off = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (i != j) {
                    off += std::abs(diag(i, j));
                }
            }
        }
        CHECK(off < 1e-12);
    }

    // matches the exponential written out directly: for a = (t,0,0),
    // exp(-i t XX) = cos(t) I - i sin(t) XX
    const double t = 0.37;
    const auto ud = canonical::u_d({t, 0, 0});
    const auto xx = tensor(gates::sigma(1), gates::sigma(1));
    const ComplexMatrix expect =
        ComplexMatrix::identity(4) * cplx(std::cos(t), 0.0) + xx * cplx(0.0, -std::sin(t));
    CHECK(frobenius_distance(ud, expect) < 1e-13);
}

TEST_CASE("magic basis carries local gates to real orthogonal matrices") {
    Rng rng(13);
    const auto& b = gates::magic_basis();
    for (int rep = 0; rep < 20; ++rep) {
        const auto local = tensor(random_su2(rng), random_su2(rng));
        const auto o = b.adjoint() * local * b;
        double imag = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                imag = std::max(imag, std::abs(o(i, j).imag()));
            }
        }
        CHECK(imag < 1e-12);
        CHECK(frobenius_distance(o.transpose() * o, ComplexMatrix::identity(4)) < 1e-12);
    }
}

TEST_CASE("decompose canonical examples") {
    SUBCASE("CNOT") {
        const auto cf = canonical::decompose(gates::cnot());
        CHECK(std::abs(cf.alphas[0] - kPi4) < 1e-9);
        CHECK(std::abs(cf.alphas[1]) < 1e-9);
        CHECK(std::abs(cf.alphas[2]) < 1e-9);
        CHECK(frobenius_distance(cf.reconstruct(), gates::cnot()) < 1e-9);
        CHECK(cf.weyl_violation() < 1e-9);
    }
    SUBCASE("SWAP") {
        const auto cf = canonical::decompose(gates::swap());
        CHECK(std::abs(cf.alphas[0] - kPi4) < 1e-9);
        CHECK(std::abs(cf.alphas[1] - kPi4) < 1e-9);
        CHECK(std::abs(cf.alphas[2] - kPi4) < 1e-9);
        CHECK(frobenius_distance(cf.reconstruct(), gates::swap()) < 1e-9);
    }
    SUBCASE("identity and iswap") {
        const auto ci = canonical::decompose(ComplexMatrix::identity(4));
        CHECK(std::abs(ci.alphas[0]) < 1e-9);
        const auto cw = canonical::decompose(gates::iswap());
        CHECK(std::abs(cw.alphas[0] - kPi4) < 1e-9);
        CHECK(std::abs(cw.alphas[1] - kPi4) < 1e-9);
        CHECK(std::abs(cw.alphas[2]) < 1e-9);
    }
}

TEST_CASE("u_d(pi/4,0,0) is locally equivalent to CNOT") {
    const auto cf = canonical::decompose(canonical::u_d({kPi4, 0, 0}));
    CHECK(std::abs(cf.alphas[0] - kPi4) < 1e-9);
    CHECK(std::abs(cf.alphas[1]) < 1e-9);
    const auto cnot_cf = canonical::decompose(gates::cnot());
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(cf.alphas[k] - cnot_cf.alphas[k]) < 1e-9);
    }
}

TEST_CASE("local dressings never move the canonical alphas") {
    Rng rng(17);
    const auto reference = canonical::decompose(gates::cnot());
    for (int rep = 0; rep < 30; ++rep) {
        const auto u = dressed(gates::cnot(), rng);
        const auto cf = canonical::decompose(u);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(cf.alphas[k] - reference.alphas[k]) < 1e-9);
        }
        CHECK(frobenius_distance(cf.reconstruct(), u) < 1e-9);
    }
}

TEST_CASE("decompose round-trips a weyl chamber grid") {
    // representative interior and boundary points
    const std::vector<std::array<double, 3>> grid{
        {0.1, 0.05, 0.02},   {0.6, 0.3, 0.1},     {0.7, 0.7, 0.2},   {kPi4, 0.4, 0.1},
        {kPi4, kPi4, 0.3},   {kPi4, kPi4, kPi4},  {0.5, 0.5, -0.2},  {0.3, 0.2, -0.1},
        {0.5, 0.2, 0.0},     {kPi4, 0.0, 0.0},    {0.0, 0.0, 0.0},   {0.44, 0.21, -0.2},
    };
    for (const auto& a : grid) {
        const auto ud = canonical::u_d(a);
        const auto cf = canonical::decompose(ud);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(cf.alphas[k] - a[k]) < 1e-9);
        }
        CHECK(frobenius_distance(cf.reconstruct(), ud) < 1e-9);
    }
}

TEST_CASE("decompose handles random dressed gates across the chamber") {
    Rng rng(19);
    for (int rep = 0; rep < 25; ++rep) {
        std::array<double, 3> a{kPi4 * rng.uniform(), kPi4 * rng.uniform(), kPi4 * rng.uniform()};
        std::sort(a.begin(), a.end(), std::greater<>());
        const auto u = dressed(canonical::u_d(a), rng);
        const auto cf = canonical::decompose(u);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(cf.alphas[k] - a[k]) < 1e-9);
        }
        CHECK(frobenius_distance(cf.reconstruct(), u) < 1e-9);
        CHECK(cf.weyl_violation() < 1e-9);
    }
}

TEST_CASE("conjugation identity holds for every alpha triple") {
    const auto zero = canonical::conjugation_check({0, 0, 0});
    CHECK(zero.max_residual() == doctest::Approx(0.0).epsilon(1e-14));

    const auto cnot_like = canonical::conjugation_check({kPi4, 0, 0});
    CHECK(cnot_like.max_residual() < 1e-12);

    Rng rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        const std::array<double, 3> a{4.0 * rng.normal(), 4.0 * rng.normal(), 4.0 * rng.normal()};
        CHECK(canonical::conjugation_check(a).max_residual() < 1e-12);
    }
}

TEST_CASE("u_d commutes with every sigma_k (x) sigma_k") {
    Rng rng(29);
    for (int rep = 0; rep < 25; ++rep) {
        const std::array<double, 3> a{rng.normal(), rng.normal(), rng.normal()};
        const auto ud = canonical::u_d(a);
        for (int k = 0; k < 4; ++k) {
            const auto w = tensor(gates::sigma(k), gates::sigma(k));
            CHECK(frobenius_distance(ud * w, w * ud) < 1e-12);
        }
    }
}

TEST_CASE("split_product_gate recovers factors and phase") {
    Rng rng(31);
    for (int rep = 0; rep < 25; ++rep) {
        const auto a = random_su2(rng);
        const auto b = random_su2(rng);
        const double phase = 2.0 * std::numbers::pi * (rng.uniform() - 0.5);
        const auto k = tensor(a, b) * std::exp(cplx(0.0, phase));
        const auto split = canonical::split_product_gate(k);
        const auto rebuilt = tensor(split.left, split.right) * std::exp(cplx(0.0, split.phase));
        CHECK(frobenius_distance(rebuilt, k) < 1e-12);
    }
    CHECK_THROWS_AS(canonical::split_product_gate(gates::cnot()), std::runtime_error);
}

TEST_CASE("decompose rejects non-unitary input") {
    ComplexMatrix bad = ComplexMatrix::identity(4);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(canonical::decompose(bad), std::invalid_argument);
    CHECK_THROWS_AS(canonical::decompose(ComplexMatrix::identity(3)), std::invalid_argument);
}
