#include "gatecap/canonical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gatecap/eigen_jacobi.hpp"
#include "gatecap/gates.hpp"
#include "gatecap/rng.hpp"

namespace gatecap::canonical {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kQuarterPi = kPi / 4.0;
const cplx kI(0.0, 1.0);

// Column phases of U_d in the magic basis, in the basis order used by
// gates::magic_basis().
std::array<double, 4> magic_phases(const std::array<double, 3>& a) {
    return {a[0] - a[1] + a[2], -a[0] + a[1] + a[2], a[0] + a[1] - a[2], -a[0] - a[1] - a[2]};
}

ComplexMatrix real_part_checked(const ComplexMatrix& m, double tol, const char* what) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (std::abs(m(i, j).imag()) > tol) {
                throw std::runtime_error(std::string("decompose: ") + what +
                                         " has unexpected imaginary part");
            }
            out(i, j) = m(i, j).real();
        }
    }
    return out;
}

// Working tuple for canonicalization moves. Maintains the invariant
// u' = k1 * U_d(alphas) * k2 * phase across every move.
struct Frame {
    std::array<double, 3> alphas;
    ComplexMatrix k1;
    ComplexMatrix k2;
    cplx phase;

    // alpha_k -> alpha_k - pi/2, absorbing exp[-i pi/2 s_k s_k] = -i s_k(x)s_k
    void shift_down(int k) {
        alphas[k] -= kHalfPi;
        phase *= -kI;
        k2 = tensor(gates::sigma(k + 1), gates::sigma(k + 1)) * k2;
    }

    void shift_up(int k) {
        alphas[k] += kHalfPi;
        phase *= kI;
        k2 = tensor(gates::sigma(k + 1), gates::sigma(k + 1)) * k2;
    }

    // (alpha_i, alpha_j) -> (-alpha_i, -alpha_j) via conjugation with
    // sigma_m on the first qubit, m the remaining axis.
    void flip_pair(int i, int j) {
        const int m = 3 - i - j;
        alphas[i] = -alphas[i];
        alphas[j] = -alphas[j];
        const ComplexMatrix local = tensor(gates::sigma(m + 1), gates::sigma(0));
        k1 = k1 * local;
        k2 = local * k2;
    }

    // alpha_i <-> alpha_j via conjugation with C(x)C, C = (s_i + s_j)/sqrt2
    void swap_axes(int i, int j) {
        std::swap(alphas[i], alphas[j]);
        const ComplexMatrix c =
            (gates::sigma(i + 1) + gates::sigma(j + 1)) * cplx(1.0 / std::sqrt(2.0), 0.0);
        const ComplexMatrix local = tensor(c, c);
        k1 = k1 * local;
        k2 = local * k2;
    }
};

// Bring alphas to the Weyl-chamber representative pi/4 >= a1 >= a2 >= |a3|
// (ties broken toward nonnegative a3), absorbing every move into the
// local factors exactly.
void canonicalize(Frame& f) {
    // center-fold each coordinate into (-pi/4, pi/4]
    for (int k = 0; k < 3; ++k) {
        while (f.alphas[k] > kQuarterPi) {
            f.shift_down(k);
        }
        while (f.alphas[k] <= -kQuarterPi) {
            f.shift_up(k);
        }
    }
    // magnitude sort, descending (3-element bubble keeps moves explicit)
    auto mag = [&](int k) { return std::abs(f.alphas[k]); };
    if (mag(0) < mag(1)) f.swap_axes(0, 1);
    if (mag(1) < mag(2)) f.swap_axes(1, 2);
    if (mag(0) < mag(1)) f.swap_axes(0, 1);
    // move any sign onto the last slot
    int negatives = 0;
    for (int k = 0; k < 3; ++k) {
        if (f.alphas[k] < 0.0) ++negatives;
    }
    if (negatives == 2) {
        if (f.alphas[0] >= 0.0) f.flip_pair(1, 2);
        else if (f.alphas[1] >= 0.0) f.flip_pair(0, 2);
        else f.flip_pair(0, 1);
    } else if (negatives == 3) {
        f.flip_pair(0, 1);
    } else if (negatives == 1 && f.alphas[2] >= 0.0) {
        f.flip_pair(f.alphas[0] < 0.0 ? 0 : 1, 2);
    }
    // on the a1 = pi/4 boundary a3's sign is a gauge choice; take +
    if (f.alphas[2] < 0.0 && f.alphas[0] >= kQuarterPi - 1e-9) {
        f.shift_down(0);
        f.flip_pair(0, 2);
    }
}

}  // namespace

ComplexMatrix u_d(const std::array<double, 3>& alphas) {
    const auto phases = magic_phases(alphas);
    const ComplexMatrix& b = gates::magic_basis();
    ComplexMatrix d(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        d(k, k) = std::exp(cplx(0.0, -phases[k]));
    }
    return b * d * b.adjoint();
}

ComplexMatrix CanonicalForm::reconstruct() const {
    return global_phase * (tensor(after_a, after_b) * u_d(alphas) * tensor(before_a, before_b));
}

double CanonicalForm::weyl_violation() const {
    double v = alphas[0] - kQuarterPi;
    v = std::max(v, alphas[1] - alphas[0]);
    v = std::max(v, std::abs(alphas[2]) - alphas[1]);
    return std::max(v, 0.0);
}

ProductSplit split_product_gate(const ComplexMatrix& k) {
    if (k.rows() != 4 || k.cols() != 4) {
        throw std::invalid_argument("split_product_gate: expected a 4x4 matrix");
    }
    auto block = [&](std::size_t r0, std::size_t c0) {
        return ComplexMatrix{{k(r0, c0), k(r0, c0 + 1)}, {k(r0 + 1, c0), k(r0 + 1, c0 + 1)}};
    };
    ComplexMatrix r = block(0, 0);
    cplx det_r = r.determinant();
    if (std::abs(det_r) < 0.1) {
        r = block(2, 0);
        det_r = r.determinant();
    }
    if (std::abs(det_r) < 0.1) {
        throw std::runtime_error("split_product_gate: matrix is not a Kronecker product");
    }
    r *= cplx(1.0, 0.0) / std::sqrt(det_r);

    const ComplexMatrix temp = k * tensor(gates::identity2(), r.adjoint());
    ComplexMatrix l{{temp(0, 0), temp(0, 2)}, {temp(2, 0), temp(2, 2)}};
    const cplx det_l = l.determinant();
    if (std::abs(det_l) < 0.9) {
        throw std::runtime_error("split_product_gate: matrix is not a Kronecker product");
    }
    l *= cplx(1.0, 0.0) / std::sqrt(det_l);
    double phase = std::arg(det_l) / 2.0;

    // sqrt branch can misalign the overall sign; fix against the input
    const ComplexMatrix candidate = std::exp(cplx(0.0, phase)) * tensor(l, r);
    if (frobenius_distance(candidate, k) > frobenius_distance(candidate * cplx(-1.0, 0.0), k)) {
        phase += kPi;
    }
    return {std::move(l), std::move(r), phase};
}

CanonicalForm decompose(const ComplexMatrix& u, std::uint64_t seed) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw std::invalid_argument("decompose: expected a 4x4 matrix");
    }
    if (u.unitarity_defect() > 1e-10) {
        throw std::invalid_argument("decompose: matrix is not unitary");
    }

    // normalize to SU(4), keeping the removed phase
    const cplx det = u.determinant();
    const cplx root = std::exp(cplx(0.0, std::arg(det) / 4.0));
    const ComplexMatrix su = u * (cplx(1.0, 0.0) / root);

    const ComplexMatrix& b = gates::magic_basis();
    const ComplexMatrix m = b.adjoint() * su * b;
    const ComplexMatrix mtm = m.transpose() * m;

    // mtm = P diag(lam^2) P^T with P real special orthogonal. Re(mtm) and
    // Im(mtm) are commuting real symmetric matrices; a random mix splits
    // degeneracies while sharing their eigenvectors.
    ComplexMatrix re(4, 4);
    ComplexMatrix im(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            re(i, j) = mtm(i, j).real();
            im(i, j) = mtm(i, j).imag();
        }
    }

    Rng rng(seed);
    ComplexMatrix p(4, 4);
    bool diagonalized = false;
    for (int attempt = 0; attempt < 2 && !diagonalized; ++attempt) {
        const double r1 = rng.normal();
        const double r2 = rng.normal();
        const ComplexMatrix mix = re * cplx(r1, 0.0) + im * cplx(r2, 0.0);
        const auto eig = hermitian_eig(mix);
        p = real_part_checked(eig.vectors, 1e-10, "eigenvector matrix");
        const ComplexMatrix check = p.transpose() * mtm * p;
        double off = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (i != j) {
                    off += std::norm(check(i, j));
                }
            }
        }
        diagonalized = std::sqrt(off) < 1e-9;
    }
    if (!diagonalized) {
        throw std::runtime_error(
            "decompose: failed to jointly diagonalize the magic-basis Gram matrix "
            "(degenerate spectrum resisted both perturbation directions)");
    }
    if (p.determinant().real() < 0.0) {
        for (std::size_t i = 0; i < 4; ++i) {
            p(i, 3) = -p(i, 3);
        }
    }

    const ComplexMatrix diag = p.transpose() * mtm * p;
    std::array<cplx, 4> lambda;
    for (std::size_t k = 0; k < 4; ++k) {
        const cplx l2 = diag(k, k);
        if (std::abs(std::abs(l2) - 1.0) > 1e-8) {
            throw std::runtime_error("decompose: Gram eigenvalue is not unimodular");
        }
        lambda[k] = std::exp(cplx(0.0, std::arg(l2) / 2.0));
    }
    cplx prod(1.0, 0.0);
    for (const auto& l : lambda) {
        prod *= l;
    }
    if (prod.real() < 0.0) {
        lambda[0] = -lambda[0];
    }

    std::array<double, 4> theta;
    for (std::size_t k = 0; k < 4; ++k) {
        theta[k] = -std::arg(lambda[k]);
    }
    std::array<double, 3> alphas{(theta[0] + theta[2]) / 2.0, (theta[1] + theta[2]) / 2.0,
                                 (theta[0] + theta[1]) / 2.0};

    // m = O1 * diag(lambda) * P^T, so O1 = m P conj(diag); O1 is real
    // special orthogonal when the diagonalization is consistent.
    ComplexMatrix p_scaled = p;  // columns scaled by conj(lambda)
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            p_scaled(i, k) = p(i, k) * std::conj(lambda[k]);
        }
    }
    const ComplexMatrix o1 = real_part_checked(m * p_scaled, 1e-8, "left orthogonal factor");

    Frame frame{alphas, b * o1 * b.adjoint(), b * p.transpose() * b.adjoint(), root};
    canonicalize(frame);

    const auto split_after = split_product_gate(frame.k1);
    const auto split_before = split_product_gate(frame.k2);

    CanonicalForm cf;
    cf.alphas = frame.alphas;
    cf.after_a = split_after.left;
    cf.after_b = split_after.right;
    cf.before_a = split_before.left;
    cf.before_b = split_before.right;
    cf.global_phase = frame.phase * std::exp(cplx(0.0, split_after.phase + split_before.phase));

    const double residual = frobenius_distance(cf.reconstruct(), u);
    if (residual > 1e-9) {
        throw std::runtime_error("decompose: reconstruction residual exceeds tolerance");
    }
    return cf;
}

ConjugationReport conjugation_check(const std::array<double, 3>& alphas) {
    const ComplexMatrix ud = u_d(alphas);
    ConjugationReport r{};
    r.conj_vs_dagger = frobenius_distance(ud.conjugate(), ud.adjoint());
    r.unitarity = frobenius_distance(ud * ud.adjoint(), ComplexMatrix::identity(4));
    return r;
}

}  // namespace gatecap::canonical
