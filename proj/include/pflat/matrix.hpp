#pragma once

#include <cstddef>
#include <vector>

#include "pflat/errors.hpp"
#include "pflat/quaternion.hpp"
#include "pflat/rational.hpp"

namespace pflat {

namespace detail {
inline const Rational& scalar_re(const Rational& x) { return x; }
inline const Rational& scalar_re(const Quaternion& x) { return x.re(); }
inline bool scalar_is_zero(const Rational& x) { return x.is_zero(); }
inline bool scalar_is_zero(const Quaternion& x) { return x.is_zero(); }
} // namespace detail

/// Dense rectangular matrix over an exact scalar type (Rational, Quaternion,
/// or a polynomial ring).
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, T init = T())
        : rows_(rows), cols_(cols), data_(rows * cols, init) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }
    friend Mat operator-(const Mat& a) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = -a.data_[i];
        return r;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (detail::scalar_is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const T& bkj = b(k, j);
                    if (detail::scalar_is_zero(bkj)) continue;
                    r(i, j) += aik * bkj;
                }
            }
        }
        return r;
    }

    template <typename S>
    friend Mat operator*(const S& s, const Mat& a) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = s * a.data_[i];
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    bool is_zero() const {
        for (const T& v : data_)
            if (!detail::scalar_is_zero(v)) return false;
        return true;
    }

    void swap_rows(std::size_t r1, std::size_t r2) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(r1, c), (*this)(r2, c));
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using MatR = Mat<Rational>;
using MatH = Mat<Quaternion>;

/// Sum of the real parts of the diagonal. Over the reals this is the
/// ordinary trace.
template <typename T>
Rational re_trace(const Mat<T>& m) {
    if (!m.is_square()) throw Error("re_trace requires a square matrix");
    Rational t;
    for (std::size_t i = 0; i < m.rows(); ++i) t += detail::scalar_re(m(i, i));
    return t;
}

/// Exact inverse via Gauss-Jordan elimination. Throws on singular input.
inline MatR rational_inverse(const MatR& a) {
    if (!a.is_square()) throw Error("inverse requires a square matrix");
    const std::size_t n = a.rows();
    MatR work = a;
    MatR inv = MatR::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw Error("matrix is singular");
        if (pivot != col) {
            work.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
        }
        Rational inv_p = Rational(1) / work(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            work(col, c) *= inv_p;
            inv(col, c) *= inv_p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work(r, col).is_zero()) continue;
            Rational f = work(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                work(r, c) -= f * work(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

/// Exact determinant of a rational matrix (plain elimination with pivoting).
inline Rational rational_det(MatR m) {
    if (!m.is_square()) throw Error("det requires a square matrix");
    const std::size_t n = m.rows();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return Rational();
        if (pivot != col) {
            m.swap_rows(pivot, col);
            det = -det;
        }
        det *= m(col, col);
        Rational inv_p = Rational(1) / m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            Rational f = m(r, col) * inv_p;
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

} // namespace pflat
