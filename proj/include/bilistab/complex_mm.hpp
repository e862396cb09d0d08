#pragma once

#include <string>
#include <utility>

#include "bilistab/matmul.hpp"
#include "bilistab/matrix.hpp"

namespace bilistab {

enum class CmmKind { regular, gauss, new_alg };

enum class CmmBackend { conventional, strassen, winograd };

struct CmmAlgorithm {
    CmmKind kind = CmmKind::regular;
    CmmBackend backend = CmmBackend::conventional;
    RecursionPolicy policy{};
};

/// Number of real matrix products the scheme performs (4, 3, 3).
int product_count(CmmKind kind);

std::string to_string(CmmKind kind);
CmmKind cmm_kind_from_string(const std::string& name);

/// (A + iB)(C + iD) with the selected scheme. Combinations follow the written
/// form of each scheme left to right; scalar constants are the nearest
/// doubles to 1/sqrt(3), 8/3, 1/2, sqrt(3)/2.
ComplexMatrix cmm(const ComplexMatrix& x, const ComplexMatrix& y, const CmmAlgorithm& algo);

/// Scalar constants of the schemes over an arbitrary field; specialized for
/// double (correctly rounded) and ExactScalar (exact in Q(sqrt 3)).
template <class T>
struct CmmConstants {
    T half;
    T inv_sqrt3;
    T sqrt3_over_2;
    T eight_thirds;
};

CmmConstants<double> cmm_double_constants();

/// The combination pipeline, generic over the scalar field and the real
/// matrix-product routine. The double production path and the exact-field
/// oracle checks instantiate the same code, so the operation order is
/// identical in both by construction.
template <class T, class MulFn>
std::pair<Mat<T>, Mat<T>> cmm_combine(const Mat<T>& a, const Mat<T>& b, const Mat<T>& c,
                                      const Mat<T>& d, CmmKind kind, MulFn mul,
                                      const CmmConstants<T>& k) {
    if (a.cols() != c.rows()) throw ContractViolation("cmm: inner dimensions differ");
    switch (kind) {
        case CmmKind::regular: {
            // (AC - BD) + i[AD + BC]
            Mat<T> re = sub(mul(a, c), mul(b, d));
            Mat<T> im = add(mul(a, d), mul(b, c));
            return {std::move(re), std::move(im)};
        }
        case CmmKind::gauss: {
            // (AC - BD) + i[(A+B)(C+D) - AC - BD]; the real part is the same
            // expression as the regular scheme's, hence bitwise equal to it.
            Mat<T> p1 = mul(a, c);
            Mat<T> p2 = mul(b, d);
            Mat<T> t1 = mul(add(a, b), add(c, d));
            Mat<T> re = sub(p1, p2);
            Mat<T> im = sub(sub(t1, p1), p2);
            return {std::move(re), std::move(im)};
        }
        case CmmKind::new_alg: {
            // 1/2 [(A + B/r3)(C + D/r3) + (A - B/r3)(C - D/r3) - 8/3 BD]
            // + i r3/2 [(A + B/r3)(C + D/r3) - (A - B/r3)(C - D/r3)]
            // The two bracketed products are shared between both parts.
            Mat<T> bs = scale(k.inv_sqrt3, b);
            Mat<T> ds = scale(k.inv_sqrt3, d);
            Mat<T> p1 = mul(add(a, bs), add(c, ds));
            Mat<T> p2 = mul(sub(a, bs), sub(c, ds));
            Mat<T> p3 = mul(b, d);
            Mat<T> re = scale(k.half, sub(add(p1, p2), scale(k.eight_thirds, p3)));
            Mat<T> im = scale(k.sqrt3_over_2, sub(p1, p2));
            return {std::move(re), std::move(im)};
        }
    }
    throw ContractViolation("cmm: unknown scheme");
}

}  // namespace bilistab
