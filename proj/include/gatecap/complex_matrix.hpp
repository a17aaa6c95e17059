#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace gatecap {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. The universal numeric carrier for
// unitaries, density operators and small reduced states (dim <= 256).
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator*(cplx scalar) const;
    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix adjoint() const;

    cplx trace() const;
    cplx determinant() const;  // Gaussian elimination, small dims only
    double frobenius_norm() const;
    double max_abs() const;

    bool is_square() const { return rows_ == cols_; }
    bool all_finite() const;

    // ||A^dag A - I||_F
    double unitarity_defect() const;
    // max |A - A^dag| entrywise
    double hermiticity_defect() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator*(cplx scalar, const ComplexMatrix& m);

// Kronecker product; (a (x) b)(c (x) d) = ac (x) bd for compatible shapes.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// ||a - b||_F
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gatecap
