#include "bilistab/complex_mm.hpp"

#include "bilistab/catalog.hpp"
#include "bilistab/errors.hpp"
#include "bilistab/exact_scalar.hpp"

namespace bilistab {

int product_count(CmmKind kind) {
    switch (kind) {
        case CmmKind::regular:
            return 4;
        case CmmKind::gauss:
        case CmmKind::new_alg:
            return 3;
    }
    throw ContractViolation("product_count: unknown scheme");
}

std::string to_string(CmmKind kind) {
    switch (kind) {
        case CmmKind::regular:
            return "regular";
        case CmmKind::gauss:
            return "gauss";
        case CmmKind::new_alg:
            return "new";
    }
    return "?";
}

CmmKind cmm_kind_from_string(const std::string& name) {
    if (name == "regular") return CmmKind::regular;
    if (name == "gauss") return CmmKind::gauss;
    if (name == "new") return CmmKind::new_alg;
    throw LookupError("unknown complex multiplication scheme '" + name + "'");
}

CmmConstants<double> cmm_double_constants() {
    static const CmmConstants<double> k = {
        0.5,
        ExactScalar::sqrt3_times(1, 3).to_double(),  // 1/sqrt(3) = sqrt(3)/3
        ExactScalar::sqrt3_times(1, 2).to_double(),
        ExactScalar::fraction(8, 3).to_double(),
    };
    return k;
}

ComplexMatrix cmm(const ComplexMatrix& x, const ComplexMatrix& y, const CmmAlgorithm& algo) {
    auto run = [&](auto mul) {
        auto [re, im] = cmm_combine(x.re, x.im, y.re, y.im, algo.kind, mul,
                                    cmm_double_constants());
        return ComplexMatrix(std::move(re), std::move(im));
    };
    switch (algo.backend) {
        case CmmBackend::conventional:
            return run([](const RealMatrix& a, const RealMatrix& b) {
                return multiply_conventional(a, b);
            });
        case CmmBackend::strassen: {
            const auto entry = get_builtin(BuiltinName::strassen_2x2);
            return run([&](const RealMatrix& a, const RealMatrix& b) {
                return multiply_recursive(a, b, entry.decomposition, algo.policy);
            });
        }
        case CmmBackend::winograd: {
            const auto entry = get_builtin(BuiltinName::winograd_2x2);
            return run([&](const RealMatrix& a, const RealMatrix& b) {
                return multiply_recursive(a, b, entry.decomposition, algo.policy);
            });
        }
    }
    throw ContractViolation("cmm: unknown backend");
}

}  // namespace bilistab
