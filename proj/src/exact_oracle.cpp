#include "bilistab/exact_oracle.hpp"

#include <mpfr.h>

#include <vector>

#include "bilistab/errors.hpp"

namespace bilistab {

ExactMatrixR to_exact(const RealMatrix& m) {
    ExactMatrixR e(m.rows(), m.cols());
    for (size_t i = 0; i < m.size(); ++i) e.data()[i] = double_to_rational(m.data()[i]);
    return e;
}

ExactMatrixC to_exact(const ComplexMatrix& m) {
    ExactMatrixC e(m.rows(), m.cols());
    for (size_t i = 0; i < e.size(); ++i) {
        e.data()[i] = GaussianRational(double_to_rational(m.re.data()[i]),
                                       double_to_rational(m.im.data()[i]));
    }
    return e;
}

ExactMatrixR exact_matmul(const ExactMatrixR& a, const ExactMatrixR& b) {
    return matmul_generic(a, b);
}

ExactMatrixC exact_matmul(const ExactMatrixC& a, const ExactMatrixC& b) {
    return matmul_generic(a, b);
}

namespace {

void abs_in_place(BigRational& q) {
    if (q < 0) q = -q;
}

double finish_rel_error(BigRational max_abs, double scale_x, double scale_y) {
    if (!(scale_x > 0.0) || !(scale_y > 0.0)) {
        throw ContractViolation("max_norm_rel_error: scales must be positive");
    }
    const BigRational denom = double_to_rational(scale_x) * double_to_rational(scale_y);
    return to_nearest_double(BigRational(max_abs / denom));
}

}  // namespace

double max_norm_rel_error(const RealMatrix& computed, const ExactMatrixR& exact, double scale_x,
                          double scale_y) {
    if (computed.rows() != exact.rows() || computed.cols() != exact.cols()) {
        throw ContractViolation("max_norm_rel_error: shape mismatch");
    }
    BigRational worst(0);
    for (size_t i = 0; i < exact.size(); ++i) {
        BigRational diff = double_to_rational(computed.data()[i]) - exact.data()[i];
        abs_in_place(diff);
        if (diff > worst) worst = diff;
    }
    return finish_rel_error(std::move(worst), scale_x, scale_y);
}

double max_norm_rel_error(const ComplexMatrix& computed, const ExactMatrixC& exact,
                          double scale_x, double scale_y) {
    if (computed.rows() != exact.rows() || computed.cols() != exact.cols()) {
        throw ContractViolation("max_norm_rel_error: shape mismatch");
    }
    BigRational worst(0);
    for (size_t i = 0; i < exact.size(); ++i) {
        BigRational dre = double_to_rational(computed.re.data()[i]) - exact.data()[i].re;
        BigRational dim = double_to_rational(computed.im.data()[i]) - exact.data()[i].im;
        abs_in_place(dre);
        abs_in_place(dim);
        if (dre > worst) worst = dre;
        if (dim > worst) worst = dim;
    }
    return finish_rel_error(std::move(worst), scale_x, scale_y);
}

double max_norm_rel_error_part(const RealMatrix& computed_part, const ExactMatrixC& exact,
                               bool imaginary, double scale_x, double scale_y) {
    if (computed_part.rows() != exact.rows() || computed_part.cols() != exact.cols()) {
        throw ContractViolation("max_norm_rel_error_part: shape mismatch");
    }
    BigRational worst(0);
    for (size_t i = 0; i < exact.size(); ++i) {
        const BigRational& ref = imaginary ? exact.data()[i].im : exact.data()[i].re;
        BigRational diff = double_to_rational(computed_part.data()[i]) - ref;
        abs_in_place(diff);
        if (diff > worst) worst = diff;
    }
    return finish_rel_error(std::move(worst), scale_x, scale_y);
}

namespace {

constexpr mpfr_prec_t kHighPrec = 256;

/// n x p matrix of 256-bit floats; product computed with one fma per term.
/// (mpfr_t is an array type, so storage is the underlying struct.)
class HighPrecMatrix {
public:
    HighPrecMatrix(int rows, int cols) : rows_(rows), cols_(cols), v_(size()) {
        for (auto& x : v_) mpfr_init2(&x, kHighPrec);
    }
    explicit HighPrecMatrix(const RealMatrix& m) : HighPrecMatrix(m.rows(), m.cols()) {
        for (size_t i = 0; i < v_.size(); ++i) mpfr_set_d(&v_[i], m.data()[i], MPFR_RNDN);
    }
    ~HighPrecMatrix() {
        for (auto& x : v_) mpfr_clear(&x);
    }
    HighPrecMatrix(const HighPrecMatrix&) = delete;
    HighPrecMatrix& operator=(const HighPrecMatrix&) = delete;
    HighPrecMatrix(HighPrecMatrix&& other) noexcept
        : rows_(other.rows_), cols_(other.cols_), v_(std::move(other.v_)) {
        other.v_.clear();
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpfr_ptr at(int i, int j) { return &v_[static_cast<size_t>(i) * cols_ + j]; }
    mpfr_srcptr at(int i, int j) const { return &v_[static_cast<size_t>(i) * cols_ + j]; }

    static HighPrecMatrix multiply(const HighPrecMatrix& a, const HighPrecMatrix& b) {
        HighPrecMatrix c(a.rows_, b.cols_);
        for (auto& x : c.v_) mpfr_set_zero(&x, 1);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                for (int j = 0; j < b.cols_; ++j) {
                    mpfr_fma(c.at(i, j), a.at(i, k), b.at(k, j), c.at(i, j), MPFR_RNDN);
                }
            }
        }
        return c;
    }

private:
    size_t size() const { return static_cast<size_t>(rows_) * cols_; }

    int rows_;
    int cols_;
    std::vector<__mpfr_struct> v_;
};

void track_max_abs_diff_q(mpfr_ptr worst, mpfr_srcptr value, const BigRational& reference) {
    mpfr_t diff;
    mpfr_init2(diff, kHighPrec);
    mpfr_sub_q(diff, value, reference.get_mpq_t(), MPFR_RNDN);
    mpfr_abs(diff, diff, MPFR_RNDN);
    mpfr_max(worst, worst, diff, MPFR_RNDN);
    mpfr_clear(diff);
}

void track_max_abs_diff_d(mpfr_ptr worst, mpfr_srcptr value, double reference) {
    mpfr_t diff;
    mpfr_init2(diff, kHighPrec);
    mpfr_d_sub(diff, reference, value, MPFR_RNDN);
    mpfr_abs(diff, diff, MPFR_RNDN);
    mpfr_max(worst, worst, diff, MPFR_RNDN);
    mpfr_clear(diff);
}

}  // namespace

double highprec_max_abs_diff(const ExactMatrixR& exact, const RealMatrix& a,
                             const RealMatrix& b) {
    if (exact.rows() != a.rows() || exact.cols() != b.cols() || a.cols() != b.rows()) {
        throw ContractViolation("highprec_max_abs_diff: shape mismatch");
    }
    HighPrecMatrix product = HighPrecMatrix::multiply(HighPrecMatrix(a), HighPrecMatrix(b));
    mpfr_t worst;
    mpfr_init2(worst, kHighPrec);
    mpfr_set_zero(worst, 1);
    for (int i = 0; i < exact.rows(); ++i) {
        for (int j = 0; j < exact.cols(); ++j) {
            track_max_abs_diff_q(worst, product.at(i, j), exact(i, j));
        }
    }
    double result = mpfr_get_d(worst, MPFR_RNDN);
    mpfr_clear(worst);
    return result;
}

double highprec_max_norm_rel_error(const ComplexMatrix& computed, const ComplexMatrix& x,
                                   const ComplexMatrix& y, double scale_x, double scale_y) {
    if (!(scale_x > 0.0) || !(scale_y > 0.0)) {
        throw ContractViolation("highprec_max_norm_rel_error: scales must be positive");
    }
    HighPrecMatrix a(x.re), b(x.im), c(y.re), d(y.im);
    HighPrecMatrix ac = HighPrecMatrix::multiply(a, c);
    HighPrecMatrix bd = HighPrecMatrix::multiply(b, d);
    HighPrecMatrix ad = HighPrecMatrix::multiply(a, d);
    HighPrecMatrix bc = HighPrecMatrix::multiply(b, c);
    mpfr_t worst, entry;
    mpfr_init2(worst, kHighPrec);
    mpfr_init2(entry, kHighPrec);
    mpfr_set_zero(worst, 1);
    for (int i = 0; i < computed.rows(); ++i) {
        for (int j = 0; j < computed.cols(); ++j) {
            mpfr_sub(entry, ac.at(i, j), bd.at(i, j), MPFR_RNDN);
            track_max_abs_diff_d(worst, entry, computed.re(i, j));
            mpfr_add(entry, ad.at(i, j), bc.at(i, j), MPFR_RNDN);
            track_max_abs_diff_d(worst, entry, computed.im(i, j));
        }
    }
    mpfr_div_d(worst, worst, scale_x, MPFR_RNDN);
    mpfr_div_d(worst, worst, scale_y, MPFR_RNDN);
    double result = mpfr_get_d(worst, MPFR_RNDN);
    mpfr_clear(entry);
    mpfr_clear(worst);
    return result;
}

}  // namespace bilistab
