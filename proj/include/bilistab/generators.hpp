#pragma once

#include <cstdint>
#include <iosfwd>

#include "bilistab/matrix.hpp"

namespace bilistab {

/// xoshiro256++ (Blackman & Vigna, public domain), seeded through splitmix64.
/// Fixed algorithm: a 64-bit seed yields the same stream on every platform.
class Prng {
public:
    explicit Prng(uint64_t seed);

    uint64_t next_u64();
    /// 53 random mantissa bits scaled to [0, 1).
    double next_unit();
    /// lo + next_unit() * (hi - lo).
    double next_uniform(double lo, double hi);
    /// Unbiased integer in [0, bound) by rejection; bound >= 1.
    uint64_t next_below(uint64_t bound);
    /// Standard normal via Box-Muller (one spare value cached).
    double next_normal();

private:
    uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct Dist {
    enum class Kind { uniform, normal } kind = Kind::uniform;
    double lo = -1.0;
    double hi = 1.0;

    static Dist uniform(double lo, double hi);
    static Dist normal();
};

/// Row-major fill, deterministic in (shape, dist, seed).
RealMatrix gen_random(int rows, int cols, const Dist& dist, uint64_t seed);

/// Real part drawn first (full matrix), then the imaginary part, from one
/// stream.
ComplexMatrix gen_random_complex(int rows, int cols, const Dist& dist, uint64_t seed);

/// Random Hadamard matrix: Sylvester construction followed by seeded row and
/// column permutations and sign flips. Entries are +-1 and H H^T = n I
/// exactly. n must be a power of 2.
RealMatrix gen_hadamard(int n, uint64_t seed);

struct ConditionedSpec {
    int n = 0;            ///< power of 2
    uint64_t kappa = 2;   ///< >= 2
    uint64_t seed = 0;
    /// Permit entries beyond 2^53 (rounded on conversion to double). With the
    /// default false the generator refuses specs whose integer entries are
    /// not guaranteed exactly representable.
    bool allow_rounding = false;
};

/// Symmetric integer matrix X = H Lambda H^T with 2-norm condition number
/// exactly kappa: Lambda carries 1, kappa and n-2 random integers in
/// [1, kappa-1] at shuffled positions, so the singular values are
/// n * diag(Lambda).
RealMatrix gen_conditioned(const ConditionedSpec& spec);

/// A + iB with kappa_2(A) = kappa_2(B) = kappa_2(A+iB) = kappa: both parts
/// share H, and place 1 and kappa at two common diagonal positions, making
/// the extreme singular values of Lambda_A + i Lambda_B exactly sqrt(2) and
/// sqrt(2)*kappa.
ComplexMatrix gen_conditioned_complex(const ConditionedSpec& spec);

/// Householder QR of a random complex matrix with U[0,1] + U[0,1]i entries;
/// the column phases make R's diagonal real nonnegative.
ComplexMatrix gen_unitary(int n, uint64_t seed);

/// Text export: "rows cols" header then one row of %.17g entries per line;
/// complex matrices are written as re/im pairs per entry.
void write_matrix_text(std::ostream& out, const RealMatrix& m);
void write_matrix_text(std::ostream& out, const ComplexMatrix& m);

}  // namespace bilistab
