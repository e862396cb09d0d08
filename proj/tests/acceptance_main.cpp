// Acceptance suite: one pass/fail line per criterion, exit 0 only when every
// gating criterion holds. Criterion 8 (wall-clock speed) is informational and
// never gates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bilistab/bounds.hpp"
#include "bilistab/catalog.hpp"
#include "bilistab/complex_mm.hpp"
#include "bilistab/exact_oracle.hpp"
#include "bilistab/experiments.hpp"
#include "bilistab/generators.hpp"
#include "bilistab/tensor_core.hpp"

using namespace bilistab;

namespace {

struct Outcome {
    bool pass = false;
    bool informational = false;
    std::string detail;
};

// --- criterion 1: growth-factor constants -----------------------------------

Outcome growth_constants() {
    struct Expected {
        BuiltinName name;
        double value;
    };
    const Expected table[] = {
        {BuiltinName::strassen_2x2, 12.0 + 2.0 * std::sqrt(2.0)},
        {BuiltinName::winograd_2x2, 7.0 + 4.0 * std::sqrt(2.0) + 3.0 * std::sqrt(3.0)},
        {BuiltinName::conventional_mm, 8.0},
        {BuiltinName::complex_regular, 4.0},
        {BuiltinName::complex_gauss, 2.0 * (1.0 + std::sqrt(2.0))},
        {BuiltinName::complex_new, 4.0},
    };
    double worst = 0.0;
    for (const auto& [name, value] : table) {
        const double gamma = growth_factor(get_builtin(name).decomposition);
        worst = std::max(worst, std::fabs(gamma - value) / value);
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst relative deviation %.3g (tolerance 1e-12)",
                  worst);
    return {worst <= 1e-12, false, detail};
}

// --- criterion 2: exact verification ----------------------------------------

Outcome exact_verification() {
    int verified = 0;
    const BuiltinName names[] = {BuiltinName::strassen_2x2,   BuiltinName::winograd_2x2,
                                 BuiltinName::conventional_mm, BuiltinName::complex_regular,
                                 BuiltinName::complex_gauss,   BuiltinName::complex_new};
    for (const BuiltinName name : names) {
        const CatalogEntry entry = get_builtin(name);
        if (verify_decomposition(entry.decomposition, entry.target_tensor())) ++verified;
    }
    return {verified == 6, false,
            std::to_string(verified) + "/6 entries reproduce their tensors exactly over Q(sqrt 3)"};
}

// --- criterion 3: growth-factor bound on complex scalar multiplication -------

Outcome thm_main_scalar() {
    const int trials = 100000;
    Prng rng(20240817);
    int violations = 0;
    double worst_margin = 0.0;
    for (const char* name : {"complex_regular", "complex_gauss", "complex_new"}) {
        const auto d = get_builtin(std::string(name)).decomposition;
        const double gamma = growth_factor(d);
        const int r = d.rank_bound();
        const double bound = (2 + 2 + r + 1) * gamma * 0x1p-53 * 1.01;
        for (int t = 0; t < trials; ++t) {
            double u0, u1, v0, v1, nu, nv;
            do {
                u0 = rng.next_uniform(-1.0, 1.0);
                u1 = rng.next_uniform(-1.0, 1.0);
                nu = std::sqrt(u0 * u0 + u1 * u1);
            } while (nu == 0.0);
            do {
                v0 = rng.next_uniform(-1.0, 1.0);
                v1 = rng.next_uniform(-1.0, 1.0);
                nv = std::sqrt(v0 * v0 + v1 * v1);
            } while (nv == 0.0);
            const std::vector<double> u{u0 / nu, u1 / nu}, v{v0 / nv, v1 / nv};
            const auto out = evaluate(d, u, v);
            // Exact complex product of the rounded unit vectors.
            const GaussianRational exact =
                GaussianRational(double_to_rational(u[0]), double_to_rational(u[1])) *
                GaussianRational(double_to_rational(v[0]), double_to_rational(v[1]));
            BigRational dre = double_to_rational(out[0]) - exact.re;
            BigRational dim = double_to_rational(out[1]) - exact.im;
            if (dre < 0) dre = -dre;
            if (dim < 0) dim = -dim;
            const double err = to_nearest_double(BigRational(dre > dim ? dre : dim));
            worst_margin = std::max(worst_margin, err / bound);
            if (err > bound) ++violations;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "3x%d unit-norm pairs, 0 allowed violations, got %d (worst error/bound %.3f)",
                  trials, violations, worst_margin);
    return {violations == 0, false, detail};
}

// --- criterion 4: entrywise bounds at n = 8 ----------------------------------

Outcome entrywise_bounds() {
    const int n = 8;
    int violations = 0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const ComplexMatrix x = gen_random_complex(n, n, Dist::uniform(0.0, 1.0), 7000 + 2 * seed);
        const ComplexMatrix y = gen_random_complex(n, n, Dist::uniform(0.0, 1.0), 7001 + 2 * seed);
        const ExactMatrixC exact = exact_matmul(to_exact(x), to_exact(y));
        const RealMatrix aa = abs(x.re), ab = abs(x.im), ac = abs(y.re), ad = abs(y.im);
        const auto check = [&](const ComplexMatrix& computed,
                               const std::pair<RealMatrix, RealMatrix>& bounds) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    BigRational dre = double_to_rational(computed.re(i, j)) - exact(i, j).re;
                    BigRational dim = double_to_rational(computed.im(i, j)) - exact(i, j).im;
                    if (dre < 0) dre = -dre;
                    if (dim < 0) dim = -dim;
                    if (to_nearest_double(dre) > bounds.first(i, j) * 1.01) ++violations;
                    if (to_nearest_double(dim) > bounds.second(i, j) * 1.01) ++violations;
                }
            }
        };
        check(cmm(x, y, {CmmKind::new_alg, CmmBackend::conventional, {}}),
              new_alg_entrywise_bounds(aa, ab, ac, ad));
        check(cmm(x, y, {CmmKind::gauss, CmmBackend::conventional, {}}),
              gauss_entrywise_bounds(aa, ab, ac, ad));
    }
    return {violations == 0, false,
            "20 seeds, every entry of new and gauss within its first-order bound x1.01 (" +
                std::to_string(violations) + " violations)"};
}

// --- shared helpers for the ordering criteria ---------------------------------

std::map<std::string, double> mean_errors(const std::vector<ExperimentRecord>& records,
                                          double kappa) {
    std::map<std::string, double> sums;
    std::map<std::string, int> counts;
    for (const auto& r : records) {
        if (kappa != 0.0 && r.kappa != kappa) continue;
        if (!r.branch_consistent) continue;  // flagged trials are excluded, not averaged
        sums[r.algorithm] += r.rel_error;
        counts[r.algorithm] += 1;
    }
    std::map<std::string, double> means;
    for (const auto& [algo, sum] : sums) means[algo] = sum / counts[algo];
    return means;
}

// --- criterion 5: Strassen vs Winograd ordering ------------------------------

Outcome fmm_ordering() {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::fmm_accuracy;
    cfg.n = 64;
    cfg.cutoff = 2;
    cfg.trials = 10;
    cfg.seed = 101;
    cfg.dist = Dist::uniform(-1.0, 1.0);
    const auto records = run_fmm_accuracy(cfg);
    const auto means = mean_errors(records, 0.0);
    const double conv = means.at("conventional");
    const double strassen = means.at("strassen");
    const double winograd = means.at("winograd");
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "mean errors: conventional %.3e < strassen %.3e < winograd %.3e",
                  conv, strassen, winograd);
    return {conv < strassen && strassen < winograd, false, detail};
}

// --- criterion 6: complex accuracy ordering over the kappa sweep --------------

Outcome cmm_ordering() {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::cmm_accuracy;
    cfg.n = 64;
    cfg.trials = 10;
    cfg.seed = 202;
    cfg.kappa_list = default_kappa_list(34, 53, 10);
    const auto records = run_cmm_accuracy(cfg);

    int held = 0;
    for (const uint64_t kappa : cfg.kappa_list) {
        const auto means = mean_errors(records, static_cast<double>(kappa));
        if (means.at("regular") <= means.at("new") && means.at("new") < means.at("gauss")) {
            ++held;
        }
    }
    const auto overall = mean_errors(records, 0.0);
    const double ratio = overall.at("new") / overall.at("gauss");
    const bool pass =
        held * 10 >= static_cast<int>(cfg.kappa_list.size()) * 8 && ratio < 0.7;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "regular <= new < gauss at %d/%zu kappa points; mean(new)/mean(gauss) = %.3f",
                  held, cfg.kappa_list.size(), ratio);
    return {pass, false, detail};
}

// --- criterion 7: Gauss real/imaginary asymmetry ------------------------------

Outcome gauss_asymmetry() {
    const int n = 64, trials = 20;
    double real_sum = 0.0, imag_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        const ComplexMatrix x =
            gen_random_complex(n, n, Dist::uniform(-1.0, 1.0), 9000 + 2 * static_cast<uint64_t>(t));
        const ComplexMatrix y =
            gen_random_complex(n, n, Dist::uniform(-1.0, 1.0), 9001 + 2 * static_cast<uint64_t>(t));
        const ExactMatrixC exact = exact_matmul(to_exact(x), to_exact(y));
        const ComplexMatrix computed = cmm(x, y, {CmmKind::gauss, CmmBackend::conventional, {}});
        const double sx = max_abs(x), sy = max_abs(y);
        real_sum += max_norm_rel_error_part(computed.re, exact, false, sx, sy);
        imag_sum += max_norm_rel_error_part(computed.im, exact, true, sx, sy);
    }
    const double ratio = imag_sum / real_sum;
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "mean imag / mean real error = %.2f (required within [1.5, 5], predicted 3)",
                  ratio);
    return {ratio >= 1.5 && ratio <= 5.0, false, detail};
}

// --- criterion 8: speed (informational) ---------------------------------------

Outcome speed(int n, int trials) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::cmm_speed;
    cfg.n = n;
    cfg.trials = trials;
    cfg.speed_repeats = 1;  // single-shot keeps the suite inside its budget
    cfg.seed = 303;
    const auto records = run_cmm_speed(cfg);
    std::map<std::string, double> total;
    for (const auto& r : records) total[r.algorithm] += r.wall_time_s;
    const double regular = total.at("regular");
    const double gauss = total.at("gauss");
    const double neu = total.at("new");
    const double rg = gauss / regular, rn = neu / regular;
    const double spread = std::fabs(neu - gauss) / gauss;
    const bool pass = rg >= 0.6 && rg <= 0.95 && rn >= 0.6 && rn <= 0.95 && spread <= 0.15;
    char detail[192];
    std::snprintf(detail, sizeof(detail),
                  "n=%d: gauss/regular %.3f, new/regular %.3f (band [0.6, 0.95]); "
                  "|new-gauss|/gauss %.3f (<= 0.15)",
                  n, rg, rn, spread);
    return {pass, true, detail};
}

// --- criterion 9: application orderings ---------------------------------------

Outcome application_ordering(ExperimentId id) {
    ExperimentConfig cfg;
    cfg.experiment = id;
    cfg.trials = 5;
    cfg.kappa_list = default_kappa_list(34, 53, 5);
    cfg.seed = 404;
    std::vector<ExperimentRecord> records;
    switch (id) {
        case ExperimentId::horner:
            cfg.n = 32;
            cfg.degree = 5;
            records = run_horner(cfg);
            break;
        case ExperimentId::unitary:
            cfg.n = 64;
            records = run_unitary(cfg);
            break;
        case ExperimentId::cnn:
            cfg.n = 64;
            cfg.depth = 6;
            records = run_cnn(cfg);
            break;
        default:
            return {false, false, "not an application experiment"};
    }
    int held = 0;
    for (const uint64_t kappa : cfg.kappa_list) {
        const auto means = mean_errors(records, static_cast<double>(kappa));
        if (means.at("regular") <= means.at("new") && means.at("new") < means.at("gauss")) {
            ++held;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%s: regular <= new < gauss at %d/%zu kappa points",
                  to_string(id).c_str(), held, cfg.kappa_list.size());
    return {held * 10 >= static_cast<int>(cfg.kappa_list.size()) * 8, false, detail};
}

Outcome applications() {
    const Outcome horner = application_ordering(ExperimentId::horner);
    const Outcome unitary = application_ordering(ExperimentId::unitary);
    const Outcome cnn = application_ordering(ExperimentId::cnn);
    return {horner.pass && unitary.pass && cnn.pass, false,
            horner.detail + "; " + unitary.detail + "; " + cnn.detail};
}

// --- criterion 10: oracle self-consistency -------------------------------------

Outcome oracle_consistency() {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const RealMatrix a = gen_random(8, 8, Dist::uniform(-1.0, 1.0), 5000 + 2 * t);
        const RealMatrix b = gen_random(8, 8, Dist::uniform(-1.0, 1.0), 5001 + 2 * t);
        worst = std::max(worst, highprec_max_abs_diff(exact_matmul(to_exact(a), to_exact(b)), a, b));
    }

    // double -> rational -> double round trips exactly for every tested value.
    Prng rng(606);
    int roundtrip_failures = 0;
    const double specials[] = {0.0, -0.0, 1.0, -1.0, 0.1, 1e-300, -1e300, 0x1p-1074, 0x1.fp1023};
    for (const double x : specials) {
        if (to_nearest_double(double_to_rational(x)) != x) ++roundtrip_failures;
    }
    for (int t = 0; t < 10000; ++t) {
        const double x = std::ldexp(rng.next_uniform(-1.0, 1.0),
                                    static_cast<int>(rng.next_below(600)) - 300);
        if (to_nearest_double(double_to_rational(x)) != x) ++roundtrip_failures;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "rational vs 256-bit product: max |diff| %.2e (<= 1e-60); "
                  "%d round-trip failures",
                  worst, roundtrip_failures);
    return {worst <= 1e-60 && roundtrip_failures == 0, false, detail};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    int speed_n = 2048, speed_trials = 10;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--speed-n") == 0 && i + 1 < argc) speed_n = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--speed-trials") == 0 && i + 1 < argc) {
            speed_trials = std::atoi(argv[++i]);
        }
    }

    struct Criterion {
        int id;
        const char* label;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "growth-factor constants", growth_constants},
        {2, "exact decomposition verification", exact_verification},
        {3, "growth-factor bound, complex scalar multiplication", thm_main_scalar},
        {4, "entrywise error bounds (new and gauss, n = 8)", entrywise_bounds},
        {5, "fast matrix multiplication accuracy ordering", fmm_ordering},
        {6, "complex multiplication accuracy ordering and ratio", cmm_ordering},
        {7, "gauss real/imaginary error asymmetry", gauss_asymmetry},
        {8, "speed ratios at n = 2048 (informational)",
         [&] { return speed(speed_n, speed_trials); }},
        {9, "application experiments (horner, unitary, cnn)", applications},
        {10, "oracle self-consistency", oracle_consistency},
    };

    bool all_pass = true;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        const Outcome outcome = criterion.run();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s — %s (%.1fs)%s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.label, outcome.detail.c_str(), secs,
                    outcome.informational ? " [informational]" : "");
        std::fflush(stdout);
        if (!outcome.pass && !outcome.informational) all_pass = false;
    }
    if (only == 0) {
        std::printf("%s\n", all_pass ? "acceptance: all gating criteria passed"
                                     : "acceptance: FAILURES above");
    }
    return all_pass ? 0 : 1;
}
