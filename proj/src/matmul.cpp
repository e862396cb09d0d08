#include "bilistab/matmul.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "bilistab/errors.hpp"

namespace bilistab {

namespace {

constexpr int kBlockI = 64;
constexpr int kBlockK = 64;
constexpr int kBlockJ = 1024;

}  // namespace

RealMatrix multiply_conventional(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw ContractViolation("multiply: inner dimensions differ");
    const int m = a.rows(), n = a.cols(), p = b.cols();
    RealMatrix c(m, p);
    // Blocked i-k-j loops. For every output entry the k contributions still
    // arrive in ascending order (kb blocks ascend, k within a block ascends),
    // so each dot product is accumulated left to right.
    for (int ib = 0; ib < m; ib += kBlockI) {
        const int iend = std::min(ib + kBlockI, m);
        for (int kb = 0; kb < n; kb += kBlockK) {
            const int kend = std::min(kb + kBlockK, n);
            for (int jb = 0; jb < p; jb += kBlockJ) {
                const int jend = std::min(jb + kBlockJ, p);
                for (int i = ib; i < iend; ++i) {
                    double* ci = c.row(i);
                    for (int k = kb; k < kend; ++k) {
                        const double aik = a(i, k);
                        const double* bk = b.row(k);
                        for (int j = jb; j < jend; ++j) ci[j] += aik * bk[j];
                    }
                }
            }
        }
    }
    return c;
}

ComplexMatrix multiply_conventional(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ContractViolation("multiply: inner dimensions differ");
    const int m = a.rows(), n = a.cols(), p = b.cols();
    ComplexMatrix c(m, p);
    for (int i = 0; i < m; ++i) {
        double* cre = c.re.row(i);
        double* cim = c.im.row(i);
        for (int k = 0; k < n; ++k) {
            const double are = a.re(i, k);
            const double aim = a.im(i, k);
            const double* bre = b.re.row(k);
            const double* bim = b.im.row(k);
            for (int j = 0; j < p; ++j) {
                cre[j] += are * bre[j] - aim * bim[j];
                cim[j] += aim * bre[j] + are * bim[j];
            }
        }
    }
    return c;
}

namespace {

/// Double view of a (4,4,4) decomposition, one flat coefficient triple per term.
struct BlockScheme {
    struct SchemeTerm {
        std::array<double, 4> u, v, w;
    };
    std::vector<SchemeTerm> terms;
};

BlockScheme compile_scheme(const BilinearDecomposition& d) {
    if (d.dims() != std::array<int, 3>{4, 4, 4}) {
        throw ContractViolation(d.name() + ": recursive multiply needs a 2x2-block "
                                           "decomposition with dims (4,4,4)");
    }
    BlockScheme s;
    s.terms.reserve(d.term_views().size());
    for (const auto& view : d.term_views()) {
        BlockScheme::SchemeTerm t{};
        std::copy_n(view.u.begin(), 4, t.u.begin());
        std::copy_n(view.v.begin(), 4, t.v.begin());
        std::copy_n(view.w.begin(), 4, t.w.begin());
        s.terms.push_back(t);
    }
    return s;
}

// -- primitives shared by the real and complex recursions --------------------

void add_scaled_into(RealMatrix& dest, double c, const RealMatrix& src) {
    double* d = dest.data();
    const double* s = src.data();
    const size_t count = dest.size();
    if (c == 1.0) {
        for (size_t i = 0; i < count; ++i) d[i] += s[i];
    } else if (c == -1.0) {
        for (size_t i = 0; i < count; ++i) d[i] -= s[i];
    } else {
        for (size_t i = 0; i < count; ++i) d[i] += c * s[i];
    }
}

void add_scaled_into(ComplexMatrix& dest, double c, const ComplexMatrix& src) {
    add_scaled_into(dest.re, c, src.re);
    add_scaled_into(dest.im, c, src.im);
}

RealMatrix make_zero(const RealMatrix&, int rows, int cols) { return {rows, cols}; }
ComplexMatrix make_zero(const ComplexMatrix&, int rows, int cols) { return {rows, cols}; }

void copy_block(const RealMatrix& src, RealMatrix& dest, int row0, int col0) {
    const int rows = std::min(dest.rows(), src.rows() - row0);
    const int cols = std::min(dest.cols(), src.cols() - col0);
    for (int i = 0; i < rows; ++i) {
        std::copy_n(src.row(row0 + i) + col0, std::max(cols, 0), dest.row(i));
    }
}

void copy_block(const ComplexMatrix& src, ComplexMatrix& dest, int row0, int col0) {
    copy_block(src.re, dest.re, row0, col0);
    copy_block(src.im, dest.im, row0, col0);
}

void paste_block(const RealMatrix& src, RealMatrix& dest, int row0, int col0) {
    const int rows = std::min(src.rows(), dest.rows() - row0);
    const int cols = std::min(src.cols(), dest.cols() - col0);
    for (int i = 0; i < rows; ++i) {
        std::copy_n(src.row(i), std::max(cols, 0), dest.row(row0 + i) + col0);
    }
}

void paste_block(const ComplexMatrix& src, ComplexMatrix& dest, int row0, int col0) {
    paste_block(src.re, dest.re, row0, col0);
    paste_block(src.im, dest.im, row0, col0);
}

template <class M>
M combine_blocks(const std::array<M, 4>& blocks, const std::array<double, 4>& coeffs) {
    // First nonzero coefficient initializes the combination, the rest are
    // accumulated left to right. Zero coefficients contribute nothing and are
    // skipped.
    M result = make_zero(blocks[0], blocks[0].rows(), blocks[0].cols());
    for (int j = 0; j < 4; ++j) {
        if (coeffs[j] != 0.0) add_scaled_into(result, coeffs[j], blocks[j]);
    }
    return result;
}

template <class M>
M recursive_multiply(const M& a, const M& b, const BlockScheme& scheme, int cutoff) {
    const int m = a.rows(), k = a.cols(), p = b.cols();
    if (std::max({m, k, p}) <= cutoff) return multiply_conventional(a, b);

    // Pad every dimension to the next even integer with zero rows/columns.
    const int mp = m + (m & 1), kp = k + (k & 1), pp = p + (p & 1);
    const int hm = mp / 2, hk = kp / 2, hp = pp / 2;

    std::array<M, 4> ab{make_zero(a, hm, hk), make_zero(a, hm, hk), make_zero(a, hm, hk),
                        make_zero(a, hm, hk)};
    std::array<M, 4> bb{make_zero(b, hk, hp), make_zero(b, hk, hp), make_zero(b, hk, hp),
                        make_zero(b, hk, hp)};
    copy_block(a, ab[0], 0, 0);
    copy_block(a, ab[1], 0, hk);
    copy_block(a, ab[2], hm, 0);
    copy_block(a, ab[3], hm, hk);
    copy_block(b, bb[0], 0, 0);
    copy_block(b, bb[1], 0, hp);
    copy_block(b, bb[2], hk, 0);
    copy_block(b, bb[3], hk, hp);

    std::array<M, 4> cb{make_zero(a, hm, hp), make_zero(a, hm, hp), make_zero(a, hm, hp),
                        make_zero(a, hm, hp)};
    for (const auto& term : scheme.terms) {
        const M left = combine_blocks(ab, term.u);
        const M right = combine_blocks(bb, term.v);
        const M product = recursive_multiply(left, right, scheme, cutoff);
        for (int l = 0; l < 4; ++l) {
            if (term.w[l] != 0.0) add_scaled_into(cb[l], term.w[l], product);
        }
    }

    if (mp == m && pp == p) {
        M c = make_zero(a, m, p);
        paste_block(cb[0], c, 0, 0);
        paste_block(cb[1], c, 0, hp);
        paste_block(cb[2], c, hm, 0);
        paste_block(cb[3], c, hm, hp);
        return c;
    }
    M padded = make_zero(a, mp, pp);
    paste_block(cb[0], padded, 0, 0);
    paste_block(cb[1], padded, 0, hp);
    paste_block(cb[2], padded, hm, 0);
    paste_block(cb[3], padded, hm, hp);
    M c = make_zero(a, m, p);
    copy_block(padded, c, 0, 0);
    return c;
}

void check_recursive_args(int acols, int brows, const RecursionPolicy& policy) {
    if (acols != brows) throw ContractViolation("multiply: inner dimensions differ");
    if (policy.cutoff < 1) throw ContractViolation("RecursionPolicy: cutoff must be >= 1");
}

}  // namespace

RealMatrix multiply_recursive(const RealMatrix& a, const RealMatrix& b,
                              const BilinearDecomposition& d, const RecursionPolicy& policy) {
    check_recursive_args(a.cols(), b.rows(), policy);
    return recursive_multiply(a, b, compile_scheme(d), policy.cutoff);
}

ComplexMatrix multiply_recursive(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const BilinearDecomposition& d, const RecursionPolicy& policy) {
    check_recursive_args(a.cols(), b.rows(), policy);
    return recursive_multiply(a, b, compile_scheme(d), policy.cutoff);
}

}  // namespace bilistab
