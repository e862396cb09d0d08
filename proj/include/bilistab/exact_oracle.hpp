#pragma once

#include "bilistab/gaussian_rational.hpp"
#include "bilistab/matrix.hpp"
#include "bilistab/rational.hpp"

namespace bilistab {

using ExactMatrixR = Mat<BigRational>;
using ExactMatrixC = Mat<GaussianRational>;

/// Exact images of floating-point matrices (entrywise dyadic rationals).
ExactMatrixR to_exact(const RealMatrix& m);
ExactMatrixC to_exact(const ComplexMatrix& m);

ExactMatrixR exact_matmul(const ExactMatrixR& a, const ExactMatrixR& b);
ExactMatrixC exact_matmul(const ExactMatrixC& a, const ExactMatrixC& b);

/// max_ij |computed_ij - exact_ij| (both real and imaginary parts for the
/// complex form), divided by scale_x*scale_y, all in exact rational
/// arithmetic with a single final rounding to double.
double max_norm_rel_error(const RealMatrix& computed, const ExactMatrixR& exact, double scale_x,
                          double scale_y);
double max_norm_rel_error(const ComplexMatrix& computed, const ExactMatrixC& exact,
                          double scale_x, double scale_y);

/// Same measure restricted to one part of a complex result.
double max_norm_rel_error_part(const RealMatrix& computed_part, const ExactMatrixC& exact,
                               bool imaginary, double scale_x, double scale_y);

/// 256-bit floating recomputation of a*b; returns max_ij |exact_ij - hp_ij|
/// as a double. Used to cross-check the rational oracle against an
/// independent arithmetic.
double highprec_max_abs_diff(const ExactMatrixR& exact, const RealMatrix& a, const RealMatrix& b);

/// Error of `computed` against a 256-bit recomputation of x*y, normalized by
/// scale_x*scale_y; independent cross-check of max_norm_rel_error.
double highprec_max_norm_rel_error(const ComplexMatrix& computed, const ComplexMatrix& x,
                                   const ComplexMatrix& y, double scale_x, double scale_y);

}  // namespace bilistab
