#include <cmath>

#include "doctest.h"

#include "bilistab/catalog.hpp"
#include "bilistab/errors.hpp"

using namespace bilistab;

TEST_CASE("strassen entry matches the published scheme") {
    const auto entry = get_builtin(BuiltinName::strassen_2x2);
    REQUIRE(entry.decomposition.terms().size() == 7);
    // First term is (vec I, vec I, vec I).
    const Term& first = entry.decomposition.terms()[0];
    const CoeffVector eye{ExactScalar(1), ExactScalar(0), ExactScalar(0), ExactScalar(1)};
    CHECK(first.u == eye);
    CHECK(first.v == eye);
    CHECK(first.w == eye);
    CHECK(verify_decomposition(entry.decomposition, entry.target_tensor()));
}

TEST_CASE("winograd entry") {
    const auto entry = get_builtin(BuiltinName::winograd_2x2);
    REQUIRE(entry.decomposition.terms().size() == 7);
    CHECK(growth_factor(entry.decomposition) ==
          doctest::Approx(7.0 + 4.0 * std::sqrt(2.0) + 3.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(verify_decomposition(entry.decomposition, entry.target_tensor()));
    CHECK_FALSE(entry.known_nuclear_norm.has_value());
}

TEST_CASE("conventional_mm entries") {
    const auto e222 = get_builtin(BuiltinName::conventional_mm);
    CHECK(e222.decomposition.terms().size() == 8);
    // All coefficient vectors are standard basis vectors.
    for (const Term& t : e222.decomposition.terms()) {
        int nonzero = 0;
        for (const auto& c : t.u) nonzero += c.is_zero() ? 0 : 1;
        CHECK(nonzero == 1);
    }
    const auto e234 = get_conventional_mm(2, 3, 4);
    CHECK(e234.decomposition.terms().size() == 24);
    CHECK(e234.decomposition.dims() == std::array<int, 3>{6, 12, 8});
    CHECK(growth_factor(e234.decomposition) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(verify_decomposition(e234.decomposition, matmul_tensor(2, 3, 4)));

    CHECK_THROWS_AS(get_conventional_mm(0, 1, 1), ContractViolation);
    CHECK_THROWS_AS(get_conventional_mm(64, 64, 64), ContractViolation);
}

TEST_CASE("complex entries attain the documented optima") {
    const auto regular = get_builtin(BuiltinName::complex_regular);
    const auto gauss = get_builtin(BuiltinName::complex_gauss);
    const auto neu = get_builtin(BuiltinName::complex_new);

    CHECK(regular.decomposition.terms().size() == 4);
    CHECK(gauss.decomposition.terms().size() == 3);
    CHECK(neu.decomposition.terms().size() == 3);

    CHECK(growth_factor(neu.decomposition) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(neu.known_nuclear_norm == 4.0);
    CHECK(regular.known_nuclear_norm == 4.0);
    CHECK(gauss.known_nuclear_norm == 4.0);
    CHECK(growth_factor(gauss.decomposition) > 4.0);

    // The new scheme matches the regular one's growth factor while matching
    // Gauss's rank: optimal in both measures.
    CHECK(growth_factor(neu.decomposition) ==
          doctest::Approx(growth_factor(regular.decomposition)).epsilon(1e-12));
    CHECK(neu.decomposition.rank_bound() == gauss.decomposition.rank_bound());
    CHECK(neu.decomposition.rank_bound() < regular.decomposition.rank_bound());
}

TEST_CASE("catalog constants table") {
    const auto rows = catalog_constants();
    REQUIRE(rows.size() == 6);

    auto find = [&rows](const std::string& name) -> const CatalogRow& {
        for (const auto& r : rows) {
            if (r.name.rfind(name, 0) == 0) return r;
        }
        FAIL("missing row ", name);
        return rows[0];
    };

    const auto& winograd = find("winograd_2x2");
    CHECK(winograd.rank == 7);
    CHECK(winograd.growth_factor ==
          doctest::Approx(7.0 + 4.0 * std::sqrt(2.0) + 3.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK_FALSE(winograd.nuclear_norm.has_value());

    const auto& regular = find("complex_regular");
    CHECK(regular.rank == 4);
    CHECK(regular.growth_factor == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(regular.nuclear_norm == 4.0);

    const auto& gauss = find("complex_gauss");
    CHECK(gauss.rank == 3);
    CHECK(gauss.growth_factor == doctest::Approx(2.0 * (1.0 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(gauss.nuclear_norm == 4.0);

    // gamma(winograd) > gamma(strassen) > gamma(conventional 2x2)
    const auto& strassen = find("strassen_2x2");
    const auto& conv = find("conventional_mm(2,2,2)");
    CHECK(winograd.growth_factor > strassen.growth_factor);
    CHECK(strassen.growth_factor > conv.growth_factor);
}

TEST_CASE("unknown names raise lookup errors") {
    CHECK_THROWS_AS(get_builtin("strassen_3x3"), LookupError);
    CHECK_THROWS_AS(get_builtin("conventional_mm(2,2)"), LookupError);
}
