#include "bilistab/bounds.hpp"

#include <cmath>

#include "bilistab/errors.hpp"
#include "bilistab/matmul.hpp"

namespace bilistab {

nlohmann::json BoundReport::to_json() const {
    return {{"first_order_bound", first_order_bound},
            {"slack_factor", slack_factor},
            {"m", m},
            {"n", n},
            {"r", r},
            {"gamma", gamma},
            {"norm_u", norm_u},
            {"norm_v", norm_v},
            {"unit_roundoff", u}};
}

BoundReport thm_main_bound(int m, int n, int r, double gamma, double norm_u, double norm_v,
                           UnitRoundoff u) {
    if (m < 1 || n < 1 || r < 1) throw ContractViolation("thm_main_bound: m, n, r must be >= 1");
    if (gamma < 0.0 || norm_u < 0.0 || norm_v < 0.0) {
        throw ContractViolation("thm_main_bound: gamma and norms must be nonnegative");
    }
    BoundReport report;
    report.first_order_bound = (m + n + r + 1) * gamma * norm_u * norm_v * u.u;
    report.m = m;
    report.n = n;
    report.r = r;
    report.gamma = gamma;
    report.norm_u = norm_u;
    report.norm_v = norm_v;
    report.u = u.u;
    return report;
}

namespace {

void check_shapes(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c,
                  const RealMatrix& d) {
    if (!a.same_shape(b) || !c.same_shape(d) || a.cols() != c.rows()) {
        throw ContractViolation("entrywise bounds: shapes do not conform");
    }
}

RealMatrix combine(double s1, const RealMatrix& m1, double s2, const RealMatrix& m2) {
    RealMatrix r(m1.rows(), m1.cols());
    for (size_t i = 0; i < r.size(); ++i) r.data()[i] = s1 * m1.data()[i] + s2 * m2.data()[i];
    return r;
}

}  // namespace

std::pair<RealMatrix, RealMatrix> new_alg_entrywise_bounds(const RealMatrix& abs_a,
                                                           const RealMatrix& abs_b,
                                                           const RealMatrix& abs_c,
                                                           const RealMatrix& abs_d,
                                                           UnitRoundoff u) {
    check_shapes(abs_a, abs_b, abs_c, abs_d);
    const int n = abs_a.cols();
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const RealMatrix left = combine(1.0, abs_a, inv_sqrt3, abs_b);
    const RealMatrix right = combine(1.0, abs_c, inv_sqrt3, abs_d);
    const RealMatrix cross = multiply_conventional(left, right);
    const RealMatrix bd = multiply_conventional(abs_b, abs_d);
    RealMatrix real_bound =
        combine((n + 7) * u.u, cross, (4.0 * n / 3.0 + 4.0) * u.u, bd);
    RealMatrix imag_bound = scale(std::sqrt(3.0) * (n + 6) * u.u, cross);
    return {std::move(real_bound), std::move(imag_bound)};
}

std::pair<RealMatrix, RealMatrix> gauss_entrywise_bounds(const RealMatrix& abs_a,
                                                         const RealMatrix& abs_b,
                                                         const RealMatrix& abs_c,
                                                         const RealMatrix& abs_d,
                                                         UnitRoundoff u) {
    check_shapes(abs_a, abs_b, abs_c, abs_d);
    const int n = abs_a.cols();
    const RealMatrix ac = multiply_conventional(abs_a, abs_c);
    const RealMatrix bd = multiply_conventional(abs_b, abs_d);
    const RealMatrix sums =
        multiply_conventional(add(abs_a, abs_b), add(abs_c, abs_d));
    RealMatrix real_bound = combine((n + 1) * u.u, ac, (n + 1) * u.u, bd);
    RealMatrix imag_bound(abs_a.rows(), abs_c.cols());
    for (size_t i = 0; i < imag_bound.size(); ++i) {
        imag_bound.data()[i] =
            (n + 4) * (sums.data()[i] + ac.data()[i] + bd.data()[i]) * u.u;
    }
    return {std::move(real_bound), std::move(imag_bound)};
}

nlohmann::json AsymptoticTable::to_json() const {
    return {{"new_real", new_real},
            {"new_imag", new_imag},
            {"gauss_real", gauss_real},
            {"gauss_imag", gauss_imag}};
}

AsymptoticTable asymptotic_compare(int n, double theta, UnitRoundoff u) {
    if (n < 1) throw ContractViolation("asymptotic_compare: n must be >= 1");
    if (!(theta >= 0.0)) throw ContractViolation("asymptotic_compare: theta must be >= 0");
    const double sqrt3 = std::sqrt(3.0);
    const double base = static_cast<double>(n) * n * theta * theta * u.u;
    AsymptoticTable t{};
    t.new_real = (1.0 + 5.0 / 3.0 + 2.0 / sqrt3) * base;
    t.new_imag = (sqrt3 + 2.0 + 1.0 / sqrt3) * base;
    t.gauss_real = 2.0 * base;
    t.gauss_imag = 6.0 * base;
    return t;
}

}  // namespace bilistab
