#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bilistab/complex_mm.hpp"
#include "bilistab/exact_oracle.hpp"
#include "bilistab/gaussian_rational.hpp"
#include "bilistab/generators.hpp"

namespace bilistab {

enum class ExperimentId { fmm_accuracy, cmm_accuracy, cmm_speed, horner, unitary, cnn };

std::string to_string(ExperimentId id);

struct ExperimentConfig {
    ExperimentId experiment = ExperimentId::cmm_accuracy;
    int n = 64;
    int trials = 10;
    /// Condition numbers for the conditioned-input experiments.
    std::vector<uint64_t> kappa_list;
    uint64_t seed = 1;
    std::vector<CmmKind> algos = {CmmKind::regular, CmmKind::gauss, CmmKind::new_alg};
    /// Recursion cutoff for the fmm experiment (maximal recursion by default).
    int cutoff = 2;
    Dist dist = Dist::uniform(-1.0, 1.0);
    bool complex_inputs = false;  ///< fmm over complex-element matrices
    int degree = 5;               ///< horner polynomial degree
    int depth = 6;                ///< cnn layers
    int cnn_inputs = 0;           ///< cnn batch columns; 0 picks 25 (n=64) / 50 (n=128)
    int speed_repeats = 3;        ///< best-of-k timing per trial
    /// Scale conditioned inputs to [1/2, 1) by an exact power of 2 before use.
    bool normalize = false;
};

struct ExperimentRecord {
    std::string experiment;
    std::string algorithm;
    int n = 0;
    double kappa = 0.0;  ///< 0 when not applicable
    uint64_t seed = 0;
    double rel_error = 0.0;  ///< oracle-measured; 0 for timing-only records
    double wall_time_s = 0.0;
    std::optional<double> bound;  ///< applicable first-order bound, when one exists
    bool branch_consistent = true;  ///< cnn only: float/exact ReLU branches agree
};

/// Condition-number grid: `points` powers of two with exponents evenly spaced
/// over [min_exp, max_exp].
std::vector<uint64_t> default_kappa_list(int min_exp = 34, int max_exp = 53, int points = 10);

/// Strassen / Winograd / conventional accuracy on random n x n inputs
/// (real or complex elements), errors against the exact oracle.
std::vector<ExperimentRecord> run_fmm_accuracy(const ExperimentConfig& cfg);

/// The three complex schemes on conditioned inputs across the kappa grid,
/// max-norm errors normalized by the input max norms.
std::vector<ExperimentRecord> run_cmm_accuracy(const ExperimentConfig& cfg);

/// Wall-time comparison on uniform random inputs; no oracle, so sizes in the
/// thousands are fine.
std::vector<ExperimentRecord> run_cmm_speed(const ExperimentConfig& cfg);

/// Degree-d matrix polynomial via Horner's rule, one cmm product per step.
std::vector<ExperimentRecord> run_horner(const ExperimentConfig& cfg);

/// Unitary transform X -> UX with Q from the in-house QR generator.
std::vector<ExperimentRecord> run_unitary(const ExperimentConfig& cfg);

/// Forward pass of a depth-d complex ReLU network with conditioned weights.
std::vector<ExperimentRecord> run_cnn(const ExperimentConfig& cfg);

/// sigma(a + bi) = max(a, 0) + max(b, 0) i.
std::complex<double> complex_relu(std::complex<double> z);
void complex_relu_in_place(ComplexMatrix& m);
GaussianRational exact_complex_relu(const GaussianRational& z);

/// a_0 I + a_1 X + ... + a_d X^d by Horner's rule; the P = P X step runs
/// through the given scheme. coeffs holds a_0..a_d.
ComplexMatrix horner_eval(const ComplexMatrix& x, std::span<const double> coeffs,
                          const CmmAlgorithm& algo);
/// The same recurrence in exact arithmetic (coefficients are the exact
/// rational images of the given doubles).
ExactMatrixC horner_eval_exact(const ComplexMatrix& x, std::span<const double> coeffs);

/// CSV I/O. Columns:
/// experiment,algorithm,n,kappa,seed,rel_error,wall_time_s,bound
/// Appending to an existing file never rewrites rows; the header is written
/// only when the file is new or empty.
void write_csv(std::ostream& out, std::span<const ExperimentRecord> records, bool header);
void append_csv_file(const std::string& path, std::span<const ExperimentRecord> records);
nlohmann::json records_to_json(std::span<const ExperimentRecord> records);

}  // namespace bilistab
