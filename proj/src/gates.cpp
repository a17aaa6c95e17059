#include "gatecap/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace gatecap::gates {

namespace {
const cplx kI(0.0, 1.0);
}

const ComplexMatrix& sigma(int k) {
    static const ComplexMatrix s0{{1.0, 0.0}, {0.0, 1.0}};
    static const ComplexMatrix s1{{0.0, 1.0}, {1.0, 0.0}};
    static const ComplexMatrix s2{{0.0, -kI}, {kI, 0.0}};
    static const ComplexMatrix s3{{1.0, 0.0}, {0.0, -1.0}};
    switch (k) {
        case 0: return s0;
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: throw std::invalid_argument("sigma: Pauli index must be in {0,1,2,3}");
    }
}

const ComplexMatrix& identity2() {
    return sigma(0);
}

const ComplexMatrix& identity4() {
    static const ComplexMatrix m = ComplexMatrix::identity(4);
    return m;
}

const ComplexMatrix& hadamard() {
    static const ComplexMatrix m = [] {
        const double r = 1.0 / std::sqrt(2.0);
        return ComplexMatrix{{r, r}, {r, -r}};
    }();
    return m;
}

const ComplexMatrix& cnot() {
    static const ComplexMatrix m{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    return m;
}

const ComplexMatrix& cz() {
    static const ComplexMatrix m{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
    return m;
}

const ComplexMatrix& swap() {
    static const ComplexMatrix m{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    return m;
}

const ComplexMatrix& iswap() {
    static const ComplexMatrix m{{1, 0, 0, 0}, {0, 0, kI, 0}, {0, kI, 0, 0}, {0, 0, 0, 1}};
    return m;
}

const ComplexMatrix& magic_basis() {
    static const ComplexMatrix m = [] {
        const double r = 1.0 / std::sqrt(2.0);
        // Columns: (|00>+|11>)/sqrt2, i(|00>-|11>)/sqrt2,
        //          i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2
        return ComplexMatrix{{r, r * kI, 0.0, 0.0},
                             {0.0, 0.0, r * kI, r},
                             {0.0, 0.0, r * kI, -r},
                             {r, -r * kI, 0.0, 0.0}};
    }();
    return m;
}

std::optional<ComplexMatrix> by_name(const std::string& name) {
    if (name == "CNOT" || name == "CX") return cnot();
    if (name == "CZ") return cz();
    if (name == "SWAP") return swap();
    if (name == "ISWAP") return iswap();
    if (name == "IDENTITY" || name == "I4") return identity4();
    if (name == "I") return identity2();
    if (name == "X") return sigma(1);
    if (name == "Y") return sigma(2);
    if (name == "Z") return sigma(3);
    if (name == "H") return hadamard();
    return std::nullopt;
}

}  // namespace gatecap::gates
