#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "bilistab/errors.hpp"

namespace bilistab {

/// Dense row-major matrix over an arbitrary scalar ring. Used with double
/// (production arithmetic), BigRational / GaussianRational (exact oracle)
/// and ExactScalar (Q(sqrt 3) checks).
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(checked_size(rows, cols)) {}
    Mat(int rows, int cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != checked_size(rows, cols)) {
            throw ContractViolation("Mat: data size does not match rows*cols");
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool same_shape(const Mat& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const {
        return data_[static_cast<size_t>(i) * cols_ + j];
    }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    T* row(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
    const T* row(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }
    size_t size() const { return data_.size(); }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }

private:
    static size_t checked_size(int rows, int cols) {
        if (rows < 1 || cols < 1) throw ContractViolation("Mat: dimensions must be positive");
        return static_cast<size_t>(rows) * static_cast<size_t>(cols);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Mat<double>;

/// A + iB as a pair of equally shaped real matrices.
struct ComplexMatrix {
    RealMatrix re;
    RealMatrix im;

    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : re(rows, cols), im(rows, cols) {}
    ComplexMatrix(RealMatrix real, RealMatrix imag) : re(std::move(real)), im(std::move(imag)) {
        if (!re.same_shape(im)) {
            throw ContractViolation("ComplexMatrix: real and imaginary shapes differ");
        }
    }

    int rows() const { return re.rows(); }
    int cols() const { return re.cols(); }
};

template <class T>
Mat<T> add(const Mat<T>& x, const Mat<T>& y) {
    if (!x.same_shape(y)) throw ContractViolation("add: shape mismatch");
    Mat<T> z(x.rows(), x.cols());
    for (size_t i = 0; i < x.size(); ++i) z.data()[i] = x.data()[i] + y.data()[i];
    return z;
}

template <class T>
Mat<T> sub(const Mat<T>& x, const Mat<T>& y) {
    if (!x.same_shape(y)) throw ContractViolation("sub: shape mismatch");
    Mat<T> z(x.rows(), x.cols());
    for (size_t i = 0; i < x.size(); ++i) z.data()[i] = x.data()[i] - y.data()[i];
    return z;
}

template <class T>
Mat<T> scale(const T& c, const Mat<T>& x) {
    Mat<T> z(x.rows(), x.cols());
    for (size_t i = 0; i < x.size(); ++i) z.data()[i] = c * x.data()[i];
    return z;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
    Mat<T> z(x.cols(), x.rows());
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) z(j, i) = x(i, j);
    }
    return z;
}

/// Reference product for non-double scalar types; accumulates in ascending-k
/// order like the production double kernel.
template <class T>
Mat<T> matmul_generic(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw ContractViolation("matmul: inner dimensions differ");
    Mat<T> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if constexpr (!std::is_same_v<T, double>) {
                if (aik == T(0)) continue;  // cheap skip for exact types
            }
            const T* bk = b.row(k);
            T* ci = c.row(i);
            for (int j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

inline double max_abs(const RealMatrix& m) {
    double v = 0.0;
    for (size_t i = 0; i < m.size(); ++i) v = std::max(v, std::fabs(m.data()[i]));
    return v;
}

/// max{|a_ij|, |b_ij|} of A + iB.
inline double max_abs(const ComplexMatrix& m) {
    return std::max(max_abs(m.re), max_abs(m.im));
}

inline RealMatrix abs(const RealMatrix& m) {
    RealMatrix r(m.rows(), m.cols());
    for (size_t i = 0; i < m.size(); ++i) r.data()[i] = std::fabs(m.data()[i]);
    return r;
}

inline bool all_finite(const RealMatrix& m) {
    for (size_t i = 0; i < m.size(); ++i) {
        if (!std::isfinite(m.data()[i])) return false;
    }
    return true;
}

}  // namespace bilistab
