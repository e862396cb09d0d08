#include <cmath>

#include "doctest.h"

#include "bilistab/complex_mm.hpp"
#include "bilistab/errors.hpp"
#include "bilistab/exact_oracle.hpp"
#include "bilistab/exact_scalar.hpp"
#include "bilistab/generators.hpp"

using namespace bilistab;

TEST_CASE("product counts") {
    CHECK(product_count(CmmKind::regular) == 4);
    CHECK(product_count(CmmKind::gauss) == 3);
    CHECK(product_count(CmmKind::new_alg) == 3);
    CHECK(cmm_kind_from_string("new") == CmmKind::new_alg);
    CHECK_THROWS_AS(cmm_kind_from_string("fast"), LookupError);
}

TEST_CASE("scalar case of the balanced scheme: (1+i)(1+i) = 2i") {
    ComplexMatrix x(1, 1);
    x.re(0, 0) = 1.0;
    x.im(0, 0) = 1.0;
    const ComplexMatrix z = cmm(x, x, {CmmKind::new_alg, CmmBackend::conventional, {}});
    CHECK(std::fabs(z.re(0, 0) - 0.0) <= 4.0 * 0x1p-53);
    CHECK(std::fabs(z.im(0, 0) - 2.0) <= 4.0 * 2.0 * 0x1p-53);
}

TEST_CASE("identity times Y is bitwise Y under the regular scheme") {
    const int n = 16;
    ComplexMatrix eye(n, n);
    for (int i = 0; i < n; ++i) eye.re(i, i) = 1.0;
    const ComplexMatrix y = gen_random_complex(n, n, Dist::uniform(-1.0, 1.0), 5);
    const ComplexMatrix z = cmm(eye, y, {CmmKind::regular, CmmBackend::conventional, {}});
    CHECK(z.re == y.re);
    CHECK(z.im == y.im);
}

TEST_CASE("gauss real part is bitwise the regular real part") {
    const int n = 24;
    const ComplexMatrix x = gen_random_complex(n, n, Dist::normal(), 11);
    const ComplexMatrix y = gen_random_complex(n, n, Dist::normal(), 12);
    const ComplexMatrix regular = cmm(x, y, {CmmKind::regular, CmmBackend::conventional, {}});
    const ComplexMatrix gauss = cmm(x, y, {CmmKind::gauss, CmmBackend::conventional, {}});
    CHECK(regular.re == gauss.re);
}

TEST_CASE("all schemes compute the exact product in exact arithmetic") {
    // Rational inputs, rational matmul backend: regular and gauss reproduce
    // the Gaussian-rational product exactly.
    const int n = 3;
    Prng rng(21);
    Mat<BigRational> a(n, n), b(n, n), c(n, n), d(n, n);
    for (size_t i = 0; i < a.size(); ++i) {
        a.data()[i] = BigRational(static_cast<long>(rng.next_below(19)) - 9, 4);
        b.data()[i] = BigRational(static_cast<long>(rng.next_below(19)) - 9, 3);
        c.data()[i] = BigRational(static_cast<long>(rng.next_below(19)) - 9, 5);
        d.data()[i] = BigRational(static_cast<long>(rng.next_below(19)) - 9, 7);
    }
    for (auto& q : {&a, &b, &c, &d}) {
        for (size_t i = 0; i < q->size(); ++i) (*q).data()[i].canonicalize();
    }
    ExactMatrixC x(n, n), y(n, n);
    for (size_t i = 0; i < x.size(); ++i) {
        x.data()[i] = GaussianRational(a.data()[i], b.data()[i]);
        y.data()[i] = GaussianRational(c.data()[i], d.data()[i]);
    }
    const ExactMatrixC exact = exact_matmul(x, y);

    const auto mul = [](const Mat<BigRational>& l, const Mat<BigRational>& r) {
        return matmul_generic(l, r);
    };
    for (const CmmKind kind : {CmmKind::regular, CmmKind::gauss}) {
        const auto [re, im] = cmm_combine(a, b, c, d, kind, mul, CmmConstants<BigRational>{});
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                CHECK(re(i, j) == exact(i, j).re);
                CHECK(im(i, j) == exact(i, j).im);
            }
        }
    }

    // The balanced scheme needs sqrt(3); it is exact over Q(sqrt 3).
    Mat<ExactScalar> ea(n, n), eb(n, n), ec(n, n), ed(n, n);
    for (size_t i = 0; i < ea.size(); ++i) {
        ea.data()[i] = ExactScalar(a.data()[i]);
        eb.data()[i] = ExactScalar(b.data()[i]);
        ec.data()[i] = ExactScalar(c.data()[i]);
        ed.data()[i] = ExactScalar(d.data()[i]);
    }
    const CmmConstants<ExactScalar> constants{
        ExactScalar::fraction(1, 2), ExactScalar::sqrt3_times(1, 3),
        ExactScalar::sqrt3_times(1, 2), ExactScalar::fraction(8, 3)};
    const auto mul_exact = [](const Mat<ExactScalar>& l, const Mat<ExactScalar>& r) {
        return matmul_generic(l, r);
    };
    const auto [re, im] = cmm_combine(ea, eb, ec, ed, CmmKind::new_alg, mul_exact, constants);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CHECK(re(i, j) == ExactScalar(exact(i, j).re));
            CHECK(im(i, j) == ExactScalar(exact(i, j).im));
        }
    }
}

TEST_CASE("error ordering on conditioned inputs: gauss > new >= regular") {
    const int n = 64;
    const uint64_t kappa = uint64_t{1} << 40;
    int favorable = 0;
    const int trials = 10;
    for (int t = 0; t < trials; ++t) {
        ConditionedSpec spec;
        spec.n = n;
        spec.kappa = kappa;
        spec.allow_rounding = true;
        spec.seed = 900 + 2 * static_cast<uint64_t>(t);
        const ComplexMatrix x = gen_conditioned_complex(spec);
        spec.seed += 1;
        const ComplexMatrix y = gen_conditioned_complex(spec);
        const ExactMatrixC exact = exact_matmul(to_exact(x), to_exact(y));
        const double sx = max_abs(x), sy = max_abs(y);
        auto err = [&](CmmKind kind) {
            return max_norm_rel_error(cmm(x, y, {kind, CmmBackend::conventional, {}}), exact, sx,
                                      sy);
        };
        const double e_regular = err(CmmKind::regular);
        const double e_gauss = err(CmmKind::gauss);
        const double e_new = err(CmmKind::new_alg);
        if (e_gauss > e_new && e_new >= e_regular) ++favorable;
    }
    CHECK(favorable >= 8);
}

TEST_CASE("fast backends plug into the schemes") {
    const int n = 8;
    const ComplexMatrix x = gen_random_complex(n, n, Dist::uniform(-1.0, 1.0), 31);
    const ComplexMatrix y = gen_random_complex(n, n, Dist::uniform(-1.0, 1.0), 32);
    const ExactMatrixC exact = exact_matmul(to_exact(x), to_exact(y));
    for (const CmmBackend backend :
         {CmmBackend::conventional, CmmBackend::strassen, CmmBackend::winograd}) {
        const ComplexMatrix z = cmm(x, y, {CmmKind::new_alg, backend, {2}});
        CHECK(max_norm_rel_error(z, exact, max_abs(x), max_abs(y)) < 1e-13);
    }
    // A cutoff at n makes the fast backends identical to the conventional one.
    const ComplexMatrix conv = cmm(x, y, {CmmKind::gauss, CmmBackend::conventional, {}});
    const ComplexMatrix fast = cmm(x, y, {CmmKind::gauss, CmmBackend::strassen, {n}});
    CHECK(conv.re == fast.re);
    CHECK(conv.im == fast.im);
}

TEST_CASE("shape mismatch raises") {
    CHECK_THROWS_AS(cmm(ComplexMatrix(2, 3), ComplexMatrix(2, 3), {}), ContractViolation);
}
