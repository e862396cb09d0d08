#pragma once

#include "bilistab/matrix.hpp"
#include "bilistab/tensor_core.hpp"

namespace bilistab {

struct RecursionPolicy {
    /// Dimensions at or below this delegate to the conventional kernel.
    int cutoff = 64;
};

/// Conventional product with every output entry accumulated over k in
/// ascending order (the textbook left-to-right dot product). The kernel is
/// cache-blocked; blocking does not reorder any entry's accumulation, so the
/// result is bitwise identical to the naive triple loop.
RealMatrix multiply_conventional(const RealMatrix& a, const RealMatrix& b);

/// Applies a 2x2-block decomposition (dims (4,4,4), e.g. Strassen or
/// Winograd) recursively. Each level pads every dimension to the next even
/// integer with zeros, forms the r block operand combinations left to right
/// per the decomposition's terms, multiplies recursively, and recombines via
/// the w coefficients left to right. At or below policy.cutoff the
/// conventional kernel takes over.
RealMatrix multiply_recursive(const RealMatrix& a, const RealMatrix& b,
                              const BilinearDecomposition& d, const RecursionPolicy& policy);

/// Complex-element variants: scalar arithmetic is componentwise in regular
/// form (4 real multiplies + 2 additions per complex multiply).
ComplexMatrix multiply_conventional(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply_recursive(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const BilinearDecomposition& d, const RecursionPolicy& policy);

}  // namespace bilistab
