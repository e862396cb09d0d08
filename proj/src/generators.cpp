#include "bilistab/generators.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

#include "bilistab/errors.hpp"

namespace bilistab {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

bool is_power_of_two(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Prng::Prng(uint64_t seed) {
    uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
}

uint64_t Prng::next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Prng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
}

double Prng::next_uniform(double lo, double hi) {
    if (!(lo < hi)) throw ContractViolation("uniform distribution needs lo < hi");
    return lo + next_unit() * (hi - lo);
}

uint64_t Prng::next_below(uint64_t bound) {
    if (bound == 0) throw ContractViolation("next_below: bound must be >= 1");
    const uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
    for (;;) {
        const uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double Prng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Dist Dist::uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
Dist Dist::normal() { return {Kind::normal, 0.0, 1.0}; }

namespace {

void fill(RealMatrix& m, const Dist& dist, Prng& rng) {
    for (size_t i = 0; i < m.size(); ++i) {
        m.data()[i] = dist.kind == Dist::Kind::uniform ? rng.next_uniform(dist.lo, dist.hi)
                                                       : rng.next_normal();
    }
}

}  // namespace

RealMatrix gen_random(int rows, int cols, const Dist& dist, uint64_t seed) {
    RealMatrix m(rows, cols);
    Prng rng(seed);
    fill(m, dist, rng);
    return m;
}

ComplexMatrix gen_random_complex(int rows, int cols, const Dist& dist, uint64_t seed) {
    ComplexMatrix m(rows, cols);
    Prng rng(seed);
    fill(m.re, dist, rng);
    fill(m.im, dist, rng);
    return m;
}

namespace {

/// Sylvester Hadamard of order n (power of 2), entries +-1 as int.
std::vector<int> sylvester(int n) {
    std::vector<int> h(static_cast<size_t>(n) * n, 1);
    for (int size = 1; size < n; size *= 2) {
        for (int i = 0; i < size; ++i) {
            for (int j = 0; j < size; ++j) {
                const int v = h[static_cast<size_t>(i) * n + j];
                h[static_cast<size_t>(i) * n + j + size] = v;
                h[static_cast<size_t>(i + size) * n + j] = v;
                h[static_cast<size_t>(i + size) * n + j + size] = -v;
            }
        }
    }
    return h;
}

std::vector<int> random_permutation(int n, Prng& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

std::vector<int> random_signs(int n, Prng& rng) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = rng.next_below(2) == 0 ? 1 : -1;
    return s;
}

/// Signed-permuted Sylvester matrix as +-1 integers.
std::vector<int> hadamard_ints(int n, Prng& rng) {
    const std::vector<int> base = sylvester(n);
    const std::vector<int> row_perm = random_permutation(n, rng);
    const std::vector<int> col_perm = random_permutation(n, rng);
    const std::vector<int> row_sign = random_signs(n, rng);
    const std::vector<int> col_sign = random_signs(n, rng);
    std::vector<int> h(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            h[static_cast<size_t>(i) * n + j] =
                row_sign[i] * col_sign[j] *
                base[static_cast<size_t>(row_perm[i]) * n + col_perm[j]];
        }
    }
    return h;
}

void check_conditioned_spec(const ConditionedSpec& spec) {
    if (spec.n < 2 || !is_power_of_two(static_cast<uint64_t>(spec.n))) {
        throw ContractViolation("conditioned generator: n must be a power of 2 (>= 2)");
    }
    if (spec.kappa < 2) throw ContractViolation("conditioned generator: kappa must be >= 2");
    const uint64_t n = static_cast<uint64_t>(spec.n);
    // Entries are sums of n terms bounded by kappa; keep exact in int64.
    if (spec.kappa > (uint64_t{1} << 62) / n) {
        throw ContractViolation("conditioned generator: n*kappa exceeds the exact int64 range");
    }
    // Exact double representability guard (refused unless rounding is allowed).
    if (!spec.allow_rounding && n * spec.kappa >= (uint64_t{1} << 53) / n) {
        throw ContractViolation(
            "conditioned generator: entries may exceed 2^53; pass allow_rounding to accept "
            "rounded doubles");
    }
}

std::vector<int64_t> lambda_values(int n, uint64_t kappa, Prng& rng) {
    std::vector<int64_t> lambda(n);
    lambda[0] = 1;
    lambda[1] = static_cast<int64_t>(kappa);
    for (int i = 2; i < n; ++i) {
        lambda[i] = static_cast<int64_t>(1 + rng.next_below(kappa - 1));  // in [1, kappa-1]
    }
    return lambda;
}

/// X = H diag(lambda) H^T over int64, then rounded (or exact) doubles.
RealMatrix assemble_hlht(const std::vector<int>& h, const std::vector<int64_t>& lambda, int n) {
    std::vector<int64_t> x(static_cast<size_t>(n) * n, 0);
    for (int k = 0; k < n; ++k) {
        const int64_t lk = lambda[k];
        for (int i = 0; i < n; ++i) {
            const int64_t hik_l = h[static_cast<size_t>(i) * n + k] * lk;
            for (int j = 0; j <= i; ++j) {
                x[static_cast<size_t>(i) * n + j] += hik_l * h[static_cast<size_t>(j) * n + k];
            }
        }
    }
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double v = static_cast<double>(x[static_cast<size_t>(i) * n + j]);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

}  // namespace

RealMatrix gen_hadamard(int n, uint64_t seed) {
    if (n < 1 || !is_power_of_two(static_cast<uint64_t>(n))) {
        throw ContractViolation("gen_hadamard: n must be a power of 2");
    }
    Prng rng(seed);
    const std::vector<int> h = hadamard_ints(n, rng);
    RealMatrix m(n, n);
    for (size_t i = 0; i < m.size(); ++i) m.data()[i] = static_cast<double>(h[i]);
    return m;
}

RealMatrix gen_conditioned(const ConditionedSpec& spec) {
    check_conditioned_spec(spec);
    Prng rng(spec.seed);
    const std::vector<int> h = hadamard_ints(spec.n, rng);
    std::vector<int64_t> lambda = lambda_values(spec.n, spec.kappa, rng);
    // Shuffle the diagonal positions.
    for (int i = spec.n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
        std::swap(lambda[i], lambda[j]);
    }
    return assemble_hlht(h, lambda, spec.n);
}

ComplexMatrix gen_conditioned_complex(const ConditionedSpec& spec) {
    check_conditioned_spec(spec);
    Prng rng(spec.seed);
    const std::vector<int> h = hadamard_ints(spec.n, rng);
    std::vector<int64_t> lambda_a = lambda_values(spec.n, spec.kappa, rng);
    std::vector<int64_t> lambda_b = lambda_values(spec.n, spec.kappa, rng);
    // One shared shuffle keeps the (1, 1) and (kappa, kappa) pairs aligned at
    // common indices; those pairs pin the extreme singular values
    // sqrt(2)*n and sqrt(2)*kappa*n of A + iB.
    for (int i = spec.n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
        std::swap(lambda_a[i], lambda_a[j]);
        std::swap(lambda_b[i], lambda_b[j]);
    }
    return {assemble_hlht(h, lambda_a, spec.n), assemble_hlht(h, lambda_b, spec.n)};
}

ComplexMatrix gen_unitary(int n, uint64_t seed) {
    if (n < 1) throw ContractViolation("gen_unitary: n must be >= 1");
    using C = std::complex<double>;
    Prng rng(seed);
    std::vector<C> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double re = rng.next_unit();
            const double im = rng.next_unit();
            a[static_cast<size_t>(i) * n + j] = C(re, im);
        }
    }
    auto at = [n](std::vector<C>& m, int i, int j) -> C& {
        return m[static_cast<size_t>(i) * n + j];
    };

    std::vector<C> q(static_cast<size_t>(n) * n, C(0.0));
    for (int i = 0; i < n; ++i) at(q, i, i) = C(1.0);

    std::vector<C> v(n);
    for (int col = 0; col < n; ++col) {
        double norm_sq = 0.0;
        for (int i = col; i < n; ++i) norm_sq += std::norm(at(a, i, col));
        const double norm = std::sqrt(norm_sq);
        if (norm == 0.0) continue;
        const C pivot = at(a, col, col);
        const C phase = std::abs(pivot) == 0.0 ? C(1.0) : pivot / std::abs(pivot);
        // Reflector v = x + e^{i arg(x_1)} |x| e_1; H = I - (2/v^H v) v v^H.
        for (int i = col; i < n; ++i) v[i] = at(a, i, col);
        v[col] += phase * norm;
        double v_norm_sq = 0.0;
        for (int i = col; i < n; ++i) v_norm_sq += std::norm(v[i]);
        if (v_norm_sq == 0.0) continue;
        const double tau = 2.0 / v_norm_sq;
        for (int c = col; c < n; ++c) {
            C s(0.0);
            for (int i = col; i < n; ++i) s += std::conj(v[i]) * at(a, i, c);
            s *= tau;
            for (int i = col; i < n; ++i) at(a, i, c) -= s * v[i];
        }
        // Q accumulates the product of the (Hermitian) reflectors.
        for (int r = 0; r < n; ++r) {
            C s(0.0);
            for (int i = col; i < n; ++i) s += at(q, r, i) * v[i];
            s *= tau;
            for (int i = col; i < n; ++i) at(q, r, i) -= s * std::conj(v[i]);
        }
    }
    // Make R's diagonal real nonnegative by absorbing its phases into Q's
    // columns.
    for (int col = 0; col < n; ++col) {
        const C r = at(a, col, col);
        if (std::abs(r) == 0.0) continue;
        const C phase = r / std::abs(r);
        for (int i = 0; i < n; ++i) at(q, i, col) *= phase;
    }

    ComplexMatrix result(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            result.re(i, j) = at(q, i, j).real();
            result.im(i, j) = at(q, i, j).imag();
        }
    }
    return result;
}

void write_matrix_text(std::ostream& out, const RealMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    char buf[32];
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf << (j + 1 == m.cols() ? '\n' : ' ');
        }
    }
}

void write_matrix_text(std::ostream& out, const ComplexMatrix& m) {
    out << m.rows() << ' ' << m.cols() << " complex\n";
    char re[32], im[32];
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            std::snprintf(re, sizeof(re), "%.17g", m.re(i, j));
            std::snprintf(im, sizeof(im), "%.17g", m.im(i, j));
            out << re << ' ' << im << (j + 1 == m.cols() ? '\n' : ' ');
        }
    }
}

}  // namespace bilistab
