#pragma once

#include <utility>

#include "json.hpp"

#include "bilistab/matrix.hpp"

namespace bilistab {

/// Unit roundoff u of the standard model fl(x op y) = (x op y)(1 + delta),
/// |delta| <= u. Defaults to IEEE double precision.
struct UnitRoundoff {
    double u = 0x1p-53;
};

/// First-order forward error bound plus the multiplier that absorbs the
/// O(u^2) tail in assertions.
struct BoundReport {
    double first_order_bound = 0.0;
    double slack_factor = 1.01;
    // echoed inputs
    int m = 0;
    int n = 0;
    int r = 0;
    double gamma = 0.0;
    double norm_u = 0.0;
    double norm_v = 0.0;
    double u = 0x1p-53;

    nlohmann::json to_json() const;
};

/// (m + n + r + 1) * gamma * |u| * |v| * u — the growth-factor forward error
/// bound for one application of an r-term bilinear algorithm on spaces of
/// dimensions m and n. With gamma equal to the operator's nuclear norm this
/// is the bound attained by a stablest algorithm.
BoundReport thm_main_bound(int m, int n, int r, double gamma, double norm_u, double norm_v,
                           UnitRoundoff u = {});

/// Entrywise first-order bounds for the balanced 3-product complex scheme:
///   real: (n+7)(|A|+|B|/r3)(|C|+|D|/r3) u + (4n/3+4)|B||D| u
///   imag: r3 (n+6)(|A|+|B|/r3)(|C|+|D|/r3) u
/// Inputs are entrywise absolute values; n is the inner dimension.
std::pair<RealMatrix, RealMatrix> new_alg_entrywise_bounds(const RealMatrix& abs_a,
                                                           const RealMatrix& abs_b,
                                                           const RealMatrix& abs_c,
                                                           const RealMatrix& abs_d,
                                                           UnitRoundoff u = {});

/// Entrywise first-order bounds for Gauss's 3-product scheme:
///   real: (n+1)(|A||C| + |B||D|) u
///   imag: (n+4)[(|A|+|B|)(|C|+|D|) + |A||C| + |B||D|] u
std::pair<RealMatrix, RealMatrix> gauss_entrywise_bounds(const RealMatrix& abs_a,
                                                         const RealMatrix& abs_b,
                                                         const RealMatrix& abs_c,
                                                         const RealMatrix& abs_d,
                                                         UnitRoundoff u = {});

/// Leading-order error sizes when all input magnitudes are about theta. The
/// coefficients are evaluated from their exact expressions
/// (1 + 5/3 + 2/r3), (r3 + 2 + 1/r3), 2 and 6.
struct AsymptoticTable {
    double new_real;
    double new_imag;
    double gauss_real;
    double gauss_imag;

    nlohmann::json to_json() const;
};

AsymptoticTable asymptotic_compare(int n, double theta, UnitRoundoff u = {});

}  // namespace bilistab
