#include "gatecap/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace gatecap {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: rows and cols must be >= 1");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: rows and cols must be >= 1");
    }
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) {
        throw std::invalid_argument("ComplexMatrix: empty initializer");
    }
    cols_ = rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in +");
    }
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = data_[i] + other.data_[i];
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in -");
    }
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = data_[i] - other.data_[i];
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in *");
    }
    ComplexMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = data_[i * cols_ + k];
            if (aik == cplx(0.0, 0.0)) {
                continue;
            }
            const cplx* brow = &other.data_[k * other.cols_];
            cplx* orow = &out.data_[i * other.cols_];
            for (std::size_t j = 0; j < other.cols_; ++j) {
                orow[j] += aik * brow[j];
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(cplx scalar) const {
    ComplexMatrix out = *this;
    out *= scalar;
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in +=");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (auto& x : data_) {
        x *= scalar;
    }
    return *this;
}

std::vector<cplx> ComplexMatrix::apply(const std::vector<cplx>& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("ComplexMatrix: vector length mismatch in apply");
    }
    std::vector<cplx> out(rows_, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx acc(0.0, 0.0);
        const cplx* row = &data_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += row[j] * v[j];
        }
        out[i] = acc;
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = std::conj(data_[i]);
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("ComplexMatrix: trace of non-square matrix");
    }
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

cplx ComplexMatrix::determinant() const {
    if (!is_square()) {
        throw std::invalid_argument("ComplexMatrix: determinant of non-square matrix");
    }
    ComplexMatrix a = *this;
    const std::size_t n = rows_;
    cplx det(1.0, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        }
        if (best == 0.0) {
            return cplx(0.0, 0.0);
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
            }
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) {
                a(r, c) -= f * a(col, c);
            }
        }
    }
    return det;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : data_) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& x : data_) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            return false;
        }
    }
    return true;
}

double ComplexMatrix::unitarity_defect() const {
    if (!is_square()) {
        return 1.0;
    }
    return frobenius_distance(adjoint() * (*this), identity(rows_));
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) {
        return 1.0;
    }
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return m;
}

ComplexMatrix operator*(cplx scalar, const ComplexMatrix& m) {
    return m * scalar;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

}  // namespace gatecap
