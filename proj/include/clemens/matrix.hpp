#pragma once

#include <vector>

#include "clemens/error.hpp"
#include "clemens/scalar.hpp"

namespace clemens {

/// Dense row-major matrix.
template <class S>
class Matrix {
public:
    Matrix(int rows, int cols, const S& fill) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw Error("Matrix: negative dimension");
        a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill);
    }
    static Matrix from_rows(const std::vector<std::vector<S>>& rows, const S& proto) {
        const int r = static_cast<int>(rows.size());
        const int c = r ? static_cast<int>(rows[0].size()) : 0;
        Matrix m(r, c, zero_like(proto));
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c) throw Error("Matrix: ragged rows");
            for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix identity(int n, const S& proto) {
        Matrix m(n, n, zero_like(proto));
        for (int i = 0; i < n; ++i) m(i, i) = one_like(proto);
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<S> row(int i) const {
        return std::vector<S>(a_.begin() + static_cast<long>(i) * cols_,
                              a_.begin() + static_cast<long>(i + 1) * cols_);
    }
    void set_row(int i, const std::vector<S>& v) {
        if (static_cast<int>(v.size()) != cols_) throw Error("Matrix: row length mismatch");
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }
    void swap_rows(int i, int k) {
        if (i == k) return;
        for (int j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }

    Matrix block(int r0, int c0, int nr, int nc) const {
        if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw Error("Matrix: block out of range");
        Matrix m(nr, nc, (*this)(0, 0));
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        }
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, a_.empty() ? S() : a_[0]);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        }
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw Error("Matrix: product dimension mismatch");
        const S zero = zero_like(x.a_.empty() ? y.a_.at(0) : x.a_[0]);
        Matrix r(x.rows_, y.cols_, zero);
        for (int i = 0; i < x.rows_; ++i) {
            for (int k = 0; k < x.cols_; ++k) {
                const S& xik = x(i, k);
                if (is_zero(xik)) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
            }
        }
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    int rows_;
    int cols_;
    std::vector<S> a_;
};

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<BigComplex>;

inline CMatrix to_complex(const QMatrix& m, long prec) {
    CMatrix r(m.rows(), m.cols(), BigComplex(prec));
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) r(i, j) = BigComplex(m(i, j), prec);
    }
    return r;
}

}  // namespace clemens
