#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bilistab/tensor_core.hpp"

namespace bilistab {

enum class BuiltinName {
    strassen_2x2,
    winograd_2x2,
    conventional_mm,
    complex_regular,
    complex_gauss,
    complex_new,
};

/// One shipped decomposition together with its closed-form growth factor and,
/// when known, the nuclear norm of the underlying bilinear operator.
struct CatalogEntry {
    BilinearDecomposition decomposition;
    double closed_form_growth;
    std::string closed_form_expression;
    std::optional<double> known_nuclear_norm;
    std::string source;
    /// Matrix multiplication dims (m, n, p) or empty for complex multiplication.
    std::optional<std::array<int, 3>> matmul_dims;

    /// The tensor this entry must reproduce exactly.
    DenseTensor3 target_tensor() const {
        if (matmul_dims) return matmul_tensor((*matmul_dims)[0], (*matmul_dims)[1], (*matmul_dims)[2]);
        return complex_mult_tensor();
    }
};

/// Returns a built-in entry. conventional_mm defaults to the 2x2x2 case; use
/// get_conventional_mm for other shapes. Every returned entry has been
/// verified exactly against its target tensor.
CatalogEntry get_builtin(BuiltinName name);

/// The conventional m x n by n x p matrix-multiplication decomposition with
/// r = m*n*p standard-basis terms.
CatalogEntry get_conventional_mm(int m, int n, int p);

/// Name lookup for the CLI; accepts "conventional_mm" as well as
/// "conventional_mm(m,n,p)". Throws LookupError for unknown names.
CatalogEntry get_builtin(const std::string& name);

std::vector<std::string> builtin_names();

struct CatalogRow {
    std::string name;
    int rank;
    double growth_factor;
    std::optional<double> nuclear_norm;
};

/// The six-row constants table (2x2 case for conventional).
std::vector<CatalogRow> catalog_constants();

}  // namespace bilistab
