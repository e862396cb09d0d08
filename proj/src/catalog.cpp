#include "bilistab/catalog.hpp"

#include <cmath>
#include <cstdio>

#include "bilistab/errors.hpp"

namespace bilistab {

namespace {

CoeffVector ints(std::initializer_list<long> values) {
    CoeffVector v;
    v.reserve(values.size());
    for (long x : values) v.emplace_back(x);
    return v;
}

Term term(CoeffVector u, CoeffVector v, CoeffVector w) {
    return Term{std::move(u), std::move(v), std::move(w)};
}

// 2x2 matrices flattened row-major: [a11, a12, a21, a22].
BilinearDecomposition make_strassen() {
    std::vector<Term> t;
    t.push_back(term(ints({1, 0, 0, 1}), ints({1, 0, 0, 1}), ints({1, 0, 0, 1})));
    t.push_back(term(ints({0, 0, 1, 1}), ints({1, 0, 0, 0}), ints({0, 0, 1, -1})));
    t.push_back(term(ints({1, 0, 0, 0}), ints({0, 1, 0, -1}), ints({0, 1, 0, 1})));
    t.push_back(term(ints({0, 0, 0, 1}), ints({-1, 0, 1, 0}), ints({1, 0, 1, 0})));
    t.push_back(term(ints({1, 1, 0, 0}), ints({0, 0, 0, 1}), ints({-1, 1, 0, 0})));
    t.push_back(term(ints({-1, 0, 1, 0}), ints({1, 1, 0, 0}), ints({0, 0, 0, 1})));
    t.push_back(term(ints({0, 1, 0, -1}), ints({0, 0, 1, 1}), ints({1, 0, 0, 0})));
    return {"strassen_2x2", {4, 4, 4}, std::move(t), std::nullopt, "12 + 2*sqrt(2)"};
}

BilinearDecomposition make_winograd() {
    std::vector<Term> t;
    t.push_back(term(ints({-1, 0, 1, 1}), ints({1, -1, 0, 1}), ints({0, 1, 1, 1})));
    t.push_back(term(ints({1, 0, 0, 0}), ints({1, 0, 0, 0}), ints({1, 1, 1, 1})));
    t.push_back(term(ints({0, 1, 0, 0}), ints({0, 0, 1, 0}), ints({1, 0, 0, 0})));
    t.push_back(term(ints({1, 0, -1, 0}), ints({0, -1, 0, 1}), ints({0, 0, 1, 1})));
    t.push_back(term(ints({0, 0, 1, 1}), ints({-1, 1, 0, 0}), ints({0, 1, 0, 1})));
    t.push_back(term(ints({1, 1, -1, -1}), ints({0, 0, 0, 1}), ints({0, 1, 0, 0})));
    t.push_back(term(ints({0, 0, 0, 1}), ints({1, -1, -1, 1}), ints({0, 0, -1, 0})));
    return {"winograd_2x2", {4, 4, 4}, std::move(t), std::nullopt,
            "7 + 4*sqrt(2) + 3*sqrt(3)"};
}

BilinearDecomposition make_complex_regular() {
    std::vector<Term> t;
    t.push_back(term(ints({1, 0}), ints({1, 0}), ints({1, 0})));
    t.push_back(term(ints({0, -1}), ints({0, 1}), ints({1, 0})));
    t.push_back(term(ints({1, 0}), ints({0, 1}), ints({0, 1})));
    t.push_back(term(ints({0, 1}), ints({1, 0}), ints({0, 1})));
    return {"complex_regular", {2, 2, 2}, std::move(t), 4.0, "4"};
}

BilinearDecomposition make_complex_gauss() {
    std::vector<Term> t;
    t.push_back(term(ints({1, 1}), ints({1, 1}), ints({0, 1})));
    t.push_back(term(ints({1, 0}), ints({1, 0}), ints({1, -1})));
    t.push_back(term(ints({0, -1}), ints({0, 1}), ints({1, 1})));
    return {"complex_gauss", {2, 2, 2}, std::move(t), 4.0, "2*(1 + sqrt(2))"};
}

BilinearDecomposition make_complex_new() {
    using E = ExactScalar;
    const E half = E::fraction(1, 2);
    const E root3_half = E::sqrt3_times(1, 2);
    std::vector<Term> t;
    // The 4/3 prefactor is folded into the output vectors, so each term is a
    // plain rank-1 triple with norm product 4/3.
    t.push_back(term({root3_half, half}, {root3_half, half},
                     {E::fraction(2, 3), E::sqrt3_times(2, 3)}));
    t.push_back(term({root3_half, -half}, {root3_half, -half},
                     {E::fraction(2, 3), E::sqrt3_times(-2, 3)}));
    t.push_back(term(ints({0, 1}), ints({0, 1}), {E::fraction(-4, 3), E(0)}));
    return {"complex_new", {2, 2, 2}, std::move(t), 4.0, "4"};
}

BilinearDecomposition make_conventional(int m, int n, int p) {
    std::vector<Term> terms;
    terms.reserve(static_cast<size_t>(m) * n * p);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < p; ++k) {
                CoeffVector u(static_cast<size_t>(m) * n);
                CoeffVector v(static_cast<size_t>(n) * p);
                CoeffVector w(static_cast<size_t>(m) * p);
                u[static_cast<size_t>(i) * n + j] = ExactScalar(1);
                v[static_cast<size_t>(j) * p + k] = ExactScalar(1);
                w[static_cast<size_t>(i) * p + k] = ExactScalar(1);
                terms.push_back(term(std::move(u), std::move(v), std::move(w)));
            }
        }
    }
    char name[64];
    std::snprintf(name, sizeof(name), "conventional_mm(%d,%d,%d)", m, n, p);
    char growth[64];
    std::snprintf(growth, sizeof(growth), "%d", m * n * p);
    return {name, {m * n, n * p, m * p}, std::move(terms), std::nullopt, growth};
}

CatalogEntry checked(CatalogEntry entry) {
    const double gamma = growth_factor(entry.decomposition);
    if (std::fabs(gamma - entry.closed_form_growth) >
        1e-12 * std::fabs(entry.closed_form_growth)) {
        throw ContractViolation(entry.decomposition.name() +
                                ": growth factor does not match its closed form");
    }
    if (!verify_decomposition(entry.decomposition, entry.target_tensor())) {
        throw ContractViolation(entry.decomposition.name() +
                                ": decomposition does not reproduce its target tensor");
    }
    return entry;
}

}  // namespace

CatalogEntry get_conventional_mm(int m, int n, int p) {
    if (m < 1 || n < 1 || p < 1) {
        throw ContractViolation("conventional_mm: dims must be >= 1");
    }
    // Dense coefficient storage is quadratic in the flattened space sizes;
    // large shapes belong to the matmul engine, not the catalog.
    if (static_cast<long long>(m) * n * p > 4096) {
        throw ContractViolation("conventional_mm catalog entries are limited to m*n*p <= 4096");
    }
    CatalogEntry e{make_conventional(m, n, p), static_cast<double>(m) * n * p,
                   std::to_string(m * n * p), std::nullopt,
                   "inner-product definition of the matrix product",
                   std::array<int, 3>{m, n, p}};
    return checked(std::move(e));
}

CatalogEntry get_builtin(BuiltinName name) {
    switch (name) {
        case BuiltinName::strassen_2x2:
            return checked({make_strassen(), 12.0 + 2.0 * std::sqrt(2.0), "12 + 2*sqrt(2)",
                            std::nullopt, "Strassen's seven-product scheme (1969)",
                            std::array<int, 3>{2, 2, 2}});
        case BuiltinName::winograd_2x2:
            return checked({make_winograd(),
                            7.0 + 4.0 * std::sqrt(2.0) + 3.0 * std::sqrt(3.0),
                            "7 + 4*sqrt(2) + 3*sqrt(3)", std::nullopt,
                            "Winograd's fifteen-addition variant of Strassen's scheme",
                            std::array<int, 3>{2, 2, 2}});
        case BuiltinName::conventional_mm:
            return get_conventional_mm(2, 2, 2);
        case BuiltinName::complex_regular:
            return checked({make_complex_regular(), 4.0, "4", 4.0,
                            "componentwise complex multiplication, four real products",
                            std::nullopt});
        case BuiltinName::complex_gauss:
            return checked({make_complex_gauss(), 2.0 * (1.0 + std::sqrt(2.0)),
                            "2*(1 + sqrt(2))", 4.0,
                            "Gauss's three-product trick for complex multiplication",
                            std::nullopt});
        case BuiltinName::complex_new:
            return checked({make_complex_new(), 4.0, "4", 4.0,
                            "rank-3 decomposition attaining the nuclear norm of complex "
                            "multiplication",
                            std::nullopt});
    }
    throw LookupError("unknown builtin");
}

CatalogEntry get_builtin(const std::string& name) {
    if (name == "strassen_2x2") return get_builtin(BuiltinName::strassen_2x2);
    if (name == "winograd_2x2") return get_builtin(BuiltinName::winograd_2x2);
    if (name == "complex_regular") return get_builtin(BuiltinName::complex_regular);
    if (name == "complex_gauss") return get_builtin(BuiltinName::complex_gauss);
    if (name == "complex_new") return get_builtin(BuiltinName::complex_new);
    if (name == "conventional_mm") return get_builtin(BuiltinName::conventional_mm);
    if (name.rfind("conventional_mm(", 0) == 0 && name.back() == ')') {
        int m = 0, n = 0, p = 0;
        if (std::sscanf(name.c_str(), "conventional_mm(%d,%d,%d)", &m, &n, &p) == 3) {
            return get_conventional_mm(m, n, p);
        }
    }
    throw LookupError("unknown builtin decomposition '" + name + "'");
}

std::vector<std::string> builtin_names() {
    return {"strassen_2x2",    "winograd_2x2", "conventional_mm(m,n,p)",
            "complex_regular", "complex_gauss", "complex_new"};
}

std::vector<CatalogRow> catalog_constants() {
    std::vector<CatalogRow> rows;
    auto push = [&rows](const CatalogEntry& e) {
        rows.push_back({e.decomposition.name(), e.decomposition.rank_bound(),
                        growth_factor(e.decomposition), e.known_nuclear_norm});
    };
    push(get_builtin(BuiltinName::strassen_2x2));
    push(get_builtin(BuiltinName::winograd_2x2));
    push(get_builtin(BuiltinName::conventional_mm));
    push(get_builtin(BuiltinName::complex_regular));
    push(get_builtin(BuiltinName::complex_gauss));
    push(get_builtin(BuiltinName::complex_new));
    return rows;
}

}  // namespace bilistab
