#include "bilistab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bilistab/bounds.hpp"
#include "bilistab/catalog.hpp"
#include "bilistab/errors.hpp"
#include "bilistab/exact_oracle.hpp"

namespace bilistab {

namespace {

constexpr int kOracleLimit = 128;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

uint64_t derive_seed(uint64_t base, uint64_t salt) {
    uint64_t x = base ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_oracle_feasible(int n, const char* what) {
    if (n > kOracleLimit) {
        throw OracleInfeasible(std::string(what) + ": exact oracle is limited to n <= " +
                               std::to_string(kOracleLimit));
    }
}

/// Exact power-of-2 rescaling of all entries into [1/2, 1).
void normalize_pow2(ComplexMatrix& m) {
    const double top = max_abs(m);
    if (top == 0.0) return;
    int exponent = 0;
    std::frexp(top, &exponent);
    const double s = std::ldexp(1.0, -exponent);
    for (size_t i = 0; i < m.re.size(); ++i) m.re.data()[i] *= s;
    for (size_t i = 0; i < m.im.size(); ++i) m.im.data()[i] *= s;
}

ComplexMatrix conditioned_input(int n, uint64_t kappa, uint64_t seed, bool normalize) {
    ConditionedSpec spec;
    spec.n = n;
    spec.kappa = kappa;
    spec.seed = seed;
    spec.allow_rounding = true;  // experiment sweeps reach kappa = 2^53
    ComplexMatrix x = gen_conditioned_complex(spec);
    if (normalize) normalize_pow2(x);
    return x;
}

/// Scale both parts by a real scalar, entrywise.
ComplexMatrix scale_complex(double s, const ComplexMatrix& m) {
    return {scale(s, m.re), scale(s, m.im)};
}

ExactMatrixC exact_identity_times(const BigRational& c, int n) {
    ExactMatrixC m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = GaussianRational(c, BigRational(0));
    return m;
}

/// Max-norm of an exact complex matrix, rounded to double.
double exact_max_abs(const ExactMatrixC& m) {
    BigRational worst(0);
    for (size_t i = 0; i < m.size(); ++i) {
        BigRational re = m.data()[i].re;
        BigRational im = m.data()[i].im;
        if (re < 0) re = -re;
        if (im < 0) im = -im;
        if (re > worst) worst = re;
        if (im > worst) worst = im;
    }
    return to_nearest_double(worst);
}

double bound_for_record(CmmKind kind, const ComplexMatrix& x, const ComplexMatrix& y,
                        double scale_x, double scale_y) {
    std::pair<RealMatrix, RealMatrix> bounds = [&] {
        const RealMatrix aa = abs(x.re), ab = abs(x.im), ac = abs(y.re), ad = abs(y.im);
        if (kind == CmmKind::new_alg) return new_alg_entrywise_bounds(aa, ab, ac, ad);
        return gauss_entrywise_bounds(aa, ab, ac, ad);
    }();
    const double worst = std::max(max_abs(bounds.first), max_abs(bounds.second));
    return worst / (scale_x * scale_y);
}

}  // namespace

std::string to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::fmm_accuracy:
            return "fmm_accuracy";
        case ExperimentId::cmm_accuracy:
            return "cmm_accuracy";
        case ExperimentId::cmm_speed:
            return "cmm_speed";
        case ExperimentId::horner:
            return "horner";
        case ExperimentId::unitary:
            return "unitary";
        case ExperimentId::cnn:
            return "cnn";
    }
    return "?";
}

std::vector<uint64_t> default_kappa_list(int min_exp, int max_exp, int points) {
    if (points < 1 || min_exp < 1 || max_exp > 62 || min_exp > max_exp) {
        throw ContractViolation("default_kappa_list: bad exponent range");
    }
    std::vector<uint64_t> list;
    list.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        const int e = static_cast<int>(std::lround(min_exp + t * (max_exp - min_exp)));
        const uint64_t kappa = uint64_t{1} << e;
        if (list.empty() || list.back() != kappa) list.push_back(kappa);
    }
    return list;
}

std::vector<ExperimentRecord> run_fmm_accuracy(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ContractViolation("fmm_accuracy: trials must be >= 1");
    require_oracle_feasible(cfg.n, "fmm_accuracy");
    if (cfg.n < 1 || (cfg.n & (cfg.n - 1)) != 0) {
        throw ContractViolation("fmm_accuracy: n must be a power of 2");
    }
    const RecursionPolicy policy{cfg.cutoff};
    const auto strassen = get_builtin(BuiltinName::strassen_2x2);
    const auto winograd = get_builtin(BuiltinName::winograd_2x2);

    std::vector<ExperimentRecord> records;
    for (int t = 0; t < cfg.trials; ++t) {
        const uint64_t seed_a = derive_seed(cfg.seed, 2 * static_cast<uint64_t>(t));
        const uint64_t seed_b = derive_seed(cfg.seed, 2 * static_cast<uint64_t>(t) + 1);
        auto emit = [&](const std::string& algo, double err, double secs) {
            ExperimentRecord r;
            r.experiment = "fmm_accuracy";
            r.algorithm = algo;
            r.n = cfg.n;
            r.seed = seed_a;
            r.rel_error = err;
            r.wall_time_s = secs;
            records.push_back(std::move(r));
        };
        if (cfg.complex_inputs) {
            const ComplexMatrix a = gen_random_complex(cfg.n, cfg.n, cfg.dist, seed_a);
            const ComplexMatrix b = gen_random_complex(cfg.n, cfg.n, cfg.dist, seed_b);
            const ExactMatrixC exact = exact_matmul(to_exact(a), to_exact(b));
            const double sa = max_abs(a), sb = max_abs(b);
            auto run = [&](const std::string& name, auto&& mul) {
                const auto start = std::chrono::steady_clock::now();
                const ComplexMatrix c = mul();
                const double secs = seconds_since(start);
                emit(name, max_norm_rel_error(c, exact, sa, sb), secs);
            };
            run("conventional", [&] { return multiply_conventional(a, b); });
            run("strassen", [&] { return multiply_recursive(a, b, strassen.decomposition, policy); });
            run("winograd", [&] { return multiply_recursive(a, b, winograd.decomposition, policy); });
        } else {
            const RealMatrix a = gen_random(cfg.n, cfg.n, cfg.dist, seed_a);
            const RealMatrix b = gen_random(cfg.n, cfg.n, cfg.dist, seed_b);
            const ExactMatrixR exact = exact_matmul(to_exact(a), to_exact(b));
            const double sa = max_abs(a), sb = max_abs(b);
            auto run = [&](const std::string& name, auto&& mul) {
                const auto start = std::chrono::steady_clock::now();
                const RealMatrix c = mul();
                const double secs = seconds_since(start);
                emit(name, max_norm_rel_error(c, exact, sa, sb), secs);
            };
            run("conventional", [&] { return multiply_conventional(a, b); });
            run("strassen", [&] { return multiply_recursive(a, b, strassen.decomposition, policy); });
            run("winograd", [&] { return multiply_recursive(a, b, winograd.decomposition, policy); });
        }
    }
    return records;
}

std::vector<ExperimentRecord> run_cmm_accuracy(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ContractViolation("cmm_accuracy: trials must be >= 1");
    require_oracle_feasible(cfg.n, "cmm_accuracy");
    const std::vector<uint64_t> kappas =
        cfg.kappa_list.empty() ? default_kappa_list() : cfg.kappa_list;

    std::vector<ExperimentRecord> records;
    uint64_t salt = 0;
    for (const uint64_t kappa : kappas) {
        for (int t = 0; t < cfg.trials; ++t) {
            const uint64_t seed_x = derive_seed(cfg.seed, 2 * salt);
            const uint64_t seed_y = derive_seed(cfg.seed, 2 * salt + 1);
            ++salt;
            const ComplexMatrix x = conditioned_input(cfg.n, kappa, seed_x, cfg.normalize);
            const ComplexMatrix y = conditioned_input(cfg.n, kappa, seed_y, cfg.normalize);
            const ExactMatrixC exact = exact_matmul(to_exact(x), to_exact(y));
            const double sx = max_abs(x), sy = max_abs(y);
            for (const CmmKind kind : cfg.algos) {
                const auto start = std::chrono::steady_clock::now();
                const ComplexMatrix computed = cmm(x, y, {kind, CmmBackend::conventional, {}});
                const double secs = seconds_since(start);
                ExperimentRecord r;
                r.experiment = "cmm_accuracy";
                r.algorithm = to_string(kind);
                r.n = cfg.n;
                r.kappa = static_cast<double>(kappa);
                r.seed = seed_x;
                r.rel_error = max_norm_rel_error(computed, exact, sx, sy);
                r.wall_time_s = secs;
                if (kind != CmmKind::regular) r.bound = bound_for_record(kind, x, y, sx, sy);
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

std::vector<ExperimentRecord> run_cmm_speed(const ExperimentConfig& cfg) {
    if (cfg.trials < 1 || cfg.speed_repeats < 1) {
        throw ContractViolation("cmm_speed: trials and repeats must be >= 1");
    }
    std::vector<ExperimentRecord> records;
    for (int t = 0; t < cfg.trials; ++t) {
        const uint64_t seed_x = derive_seed(cfg.seed, 2 * static_cast<uint64_t>(t));
        const uint64_t seed_y = derive_seed(cfg.seed, 2 * static_cast<uint64_t>(t) + 1);
        const ComplexMatrix x = gen_random_complex(cfg.n, cfg.n, cfg.dist, seed_x);
        const ComplexMatrix y = gen_random_complex(cfg.n, cfg.n, cfg.dist, seed_y);
        for (const CmmKind kind : cfg.algos) {
            double best = 0.0;
            for (int rep = 0; rep < cfg.speed_repeats; ++rep) {
                const auto start = std::chrono::steady_clock::now();
                const ComplexMatrix computed = cmm(x, y, {kind, CmmBackend::conventional, {}});
                const double secs = seconds_since(start);
                (void)computed;
                best = rep == 0 ? secs : std::min(best, secs);
            }
            ExperimentRecord r;
            r.experiment = "cmm_speed";
            r.algorithm = to_string(kind);
            r.n = cfg.n;
            r.seed = seed_x;
            r.wall_time_s = best;
            records.push_back(std::move(r));
        }
    }
    return records;
}

ComplexMatrix horner_eval(const ComplexMatrix& x, std::span<const double> coeffs,
                          const CmmAlgorithm& algo) {
    if (coeffs.empty()) throw ContractViolation("horner_eval: need at least a_0");
    if (x.rows() != x.cols()) throw ContractViolation("horner_eval: X must be square");
    const int n = x.rows();
    const int degree = static_cast<int>(coeffs.size()) - 1;
    // S = a_0 I + a_1 X
    ComplexMatrix s = degree >= 1 ? scale_complex(coeffs[1], x) : ComplexMatrix(n, n);
    for (int i = 0; i < n; ++i) s.re(i, i) += coeffs[0];
    ComplexMatrix p = x;
    for (int k = 2; k <= degree; ++k) {
        p = cmm(p, x, algo);
        const ComplexMatrix scaled = scale_complex(coeffs[k], p);
        s = ComplexMatrix(add(s.re, scaled.re), add(s.im, scaled.im));
    }
    return s;
}

ExactMatrixC horner_eval_exact(const ComplexMatrix& x, std::span<const double> coeffs) {
    if (coeffs.empty()) throw ContractViolation("horner_eval_exact: need at least a_0");
    const int n = x.rows();
    const ExactMatrixC x_exact = to_exact(x);
    const int degree = static_cast<int>(coeffs.size()) - 1;
    ExactMatrixC s = exact_identity_times(double_to_rational(coeffs[0]), n);
    if (degree < 1) return s;
    auto accumulate = [&s](const BigRational& a, const ExactMatrixC& p) {
        for (size_t i = 0; i < s.size(); ++i) {
            s.data()[i].re += a * p.data()[i].re;
            s.data()[i].im += a * p.data()[i].im;
        }
    };
    ExactMatrixC p = x_exact;
    accumulate(double_to_rational(coeffs[1]), p);
    for (int k = 2; k <= degree; ++k) {
        p = exact_matmul(p, x_exact);
        accumulate(double_to_rational(coeffs[k]), p);
    }
    return s;
}

std::vector<ExperimentRecord> run_horner(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ContractViolation("horner: trials must be >= 1");
    if (cfg.degree < 0) throw ContractViolation("horner: degree must be >= 0");
    require_oracle_feasible(cfg.n, "horner");
    const std::vector<uint64_t> kappas =
        cfg.kappa_list.empty() ? default_kappa_list() : cfg.kappa_list;

    std::vector<ExperimentRecord> records;
    uint64_t salt = 0;
    for (const uint64_t kappa : kappas) {
        for (int t = 0; t < cfg.trials; ++t) {
            const uint64_t seed_x = derive_seed(cfg.seed, 3 * salt);
            const uint64_t seed_coeff = derive_seed(cfg.seed, 3 * salt + 1);
            ++salt;
            const ComplexMatrix x = conditioned_input(cfg.n, kappa, seed_x, cfg.normalize);
            Prng coeff_rng(seed_coeff);
            std::vector<double> coeff(static_cast<size_t>(cfg.degree) + 1);
            for (auto& a : coeff) {
                a = static_cast<double>((coeff_rng.next_u64() >> 11) + 1) * 0x1p-53;  // (0, 1]
            }

            // Exact reference, shared by all algorithms.
            const ExactMatrixC s_exact = horner_eval_exact(x, coeff);
            const double scale_p = exact_max_abs(s_exact);

            for (const CmmKind kind : cfg.algos) {
                const CmmAlgorithm algo{kind, CmmBackend::conventional, {}};
                const auto start = std::chrono::steady_clock::now();
                const ComplexMatrix s = horner_eval(x, coeff, algo);
                const double secs = seconds_since(start);
                ExperimentRecord r;
                r.experiment = "horner";
                r.algorithm = to_string(kind);
                r.n = cfg.n;
                r.kappa = static_cast<double>(kappa);
                r.seed = seed_x;
                r.rel_error = scale_p == 0.0 ? 0.0 : max_norm_rel_error(s, s_exact, scale_p, 1.0);
                r.wall_time_s = secs;
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

std::vector<ExperimentRecord> run_unitary(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ContractViolation("unitary: trials must be >= 1");
    require_oracle_feasible(cfg.n, "unitary");
    const std::vector<uint64_t> kappas =
        cfg.kappa_list.empty() ? default_kappa_list() : cfg.kappa_list;

    std::vector<ExperimentRecord> records;
    uint64_t salt = 0;
    for (const uint64_t kappa : kappas) {
        for (int t = 0; t < cfg.trials; ++t) {
            const uint64_t seed_u = derive_seed(cfg.seed, 2 * salt);
            const uint64_t seed_x = derive_seed(cfg.seed, 2 * salt + 1);
            ++salt;
            const ComplexMatrix u = gen_unitary(cfg.n, seed_u);
            // Unitarity gate: ||U^H U - I||max <= 100 n u (real part carries
            // the diagonal; imaginary part is checked in tests).
            {
                const RealMatrix utu_re = add(multiply_conventional(transpose(u.re), u.re),
                                              multiply_conventional(transpose(u.im), u.im));
                RealMatrix defect = utu_re;
                for (int i = 0; i < cfg.n; ++i) defect(i, i) -= 1.0;
                if (max_abs(defect) > 100.0 * cfg.n * 0x1p-53) {
                    throw ContractViolation("gen_unitary produced a matrix far from unitary");
                }
            }
            const ComplexMatrix x = conditioned_input(cfg.n, kappa, seed_x, cfg.normalize);
            const ExactMatrixC exact = exact_matmul(to_exact(u), to_exact(x));
            const double su = max_abs(u), sx = max_abs(x);
            for (const CmmKind kind : cfg.algos) {
                const auto start = std::chrono::steady_clock::now();
                const ComplexMatrix computed = cmm(u, x, {kind, CmmBackend::conventional, {}});
                const double secs = seconds_since(start);
                ExperimentRecord r;
                r.experiment = "unitary";
                r.algorithm = to_string(kind);
                r.n = cfg.n;
                r.kappa = static_cast<double>(kappa);
                r.seed = seed_x;
                r.rel_error = max_norm_rel_error(computed, exact, su, sx);
                r.wall_time_s = secs;
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

std::complex<double> complex_relu(std::complex<double> z) {
    return {z.real() > 0.0 ? z.real() : 0.0, z.imag() > 0.0 ? z.imag() : 0.0};
}

void complex_relu_in_place(ComplexMatrix& m) {
    for (size_t i = 0; i < m.re.size(); ++i) {
        double& re = m.re.data()[i];
        double& im = m.im.data()[i];
        re = re > 0.0 ? re : 0.0;
        im = im > 0.0 ? im : 0.0;
    }
}

GaussianRational exact_complex_relu(const GaussianRational& z) {
    return {z.re > 0 ? z.re : BigRational(0), z.im > 0 ? z.im : BigRational(0)};
}

std::vector<ExperimentRecord> run_cnn(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ContractViolation("cnn: trials must be >= 1");
    if (cfg.depth < 1) throw ContractViolation("cnn: depth must be >= 1");
    require_oracle_feasible(cfg.n, "cnn");
    const int cols = cfg.cnn_inputs > 0 ? cfg.cnn_inputs : (cfg.n == 128 ? 50 : 25);
    const std::vector<uint64_t> kappas =
        cfg.kappa_list.empty() ? default_kappa_list() : cfg.kappa_list;

    std::vector<ExperimentRecord> records;
    uint64_t salt = 0;
    for (const uint64_t kappa : kappas) {
        for (int t = 0; t < cfg.trials; ++t) {
            const uint64_t trial_seed = derive_seed(cfg.seed, salt++);
            std::vector<ComplexMatrix> weights;
            weights.reserve(cfg.depth);
            for (int layer = 0; layer < cfg.depth; ++layer) {
                weights.push_back(conditioned_input(
                    cfg.n, kappa, derive_seed(trial_seed, static_cast<uint64_t>(layer) + 1),
                    cfg.normalize));
            }
            const ComplexMatrix x =
                gen_random_complex(cfg.n, cols, Dist::uniform(-0.5, 0.5), derive_seed(trial_seed, 0));

            // Exact forward pass (ReLU sign tests are exact in rational
            // arithmetic); branch pattern recorded for the consistency guard.
            std::vector<std::vector<bool>> exact_branches(cfg.depth > 1 ? cfg.depth - 1 : 0);
            ExactMatrixC z_exact = to_exact(x);
            for (int layer = 0; layer < cfg.depth; ++layer) {
                z_exact = exact_matmul(to_exact(weights[layer]), z_exact);
                if (layer + 1 < cfg.depth) {
                    auto& branches = exact_branches[layer];
                    branches.reserve(2 * z_exact.size());
                    for (size_t i = 0; i < z_exact.size(); ++i) {
                        GaussianRational& v = z_exact.data()[i];
                        branches.push_back(v.re > 0);
                        branches.push_back(v.im > 0);
                        v = exact_complex_relu(v);
                    }
                }
            }
            const double scale_e = exact_max_abs(z_exact);

            for (const CmmKind kind : cfg.algos) {
                const CmmAlgorithm algo{kind, CmmBackend::conventional, {}};
                bool consistent = true;
                const auto start = std::chrono::steady_clock::now();
                ComplexMatrix z = x;
                for (int layer = 0; layer < cfg.depth; ++layer) {
                    z = cmm(weights[layer], z, algo);
                    if (layer + 1 < cfg.depth) {
                        const auto& branches = exact_branches[layer];
                        for (size_t i = 0; i < z.re.size(); ++i) {
                            double& re = z.re.data()[i];
                            double& im = z.im.data()[i];
                            consistent &= branches[2 * i] == (re > 0.0);
                            consistent &= branches[2 * i + 1] == (im > 0.0);
                            re = re > 0.0 ? re : 0.0;
                            im = im > 0.0 ? im : 0.0;
                        }
                    }
                }
                const double secs = seconds_since(start);
                if (!consistent) {
                    std::cerr << "cnn: ReLU branch divergence between exact and floating pass "
                                 "(kappa="
                              << kappa << ", seed=" << trial_seed << ", algo=" << to_string(kind)
                              << "); record flagged\n";
                }
                ExperimentRecord r;
                r.experiment = "cnn";
                r.algorithm = to_string(kind);
                r.n = cfg.n;
                r.kappa = static_cast<double>(kappa);
                r.seed = trial_seed;
                r.rel_error = scale_e == 0.0 ? 0.0 : max_norm_rel_error(z, z_exact, scale_e, 1.0);
                r.wall_time_s = secs;
                r.branch_consistent = consistent;
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records, bool header) {
    if (header) out << "experiment,algorithm,n,kappa,seed,rel_error,wall_time_s,bound\n";
    for (const auto& r : records) {
        out << r.experiment << ',' << r.algorithm << ',' << r.n << ',' << format_double(r.kappa)
            << ',' << r.seed << ',' << format_double(r.rel_error) << ','
            << format_double(r.wall_time_s) << ',' << (r.bound ? format_double(*r.bound) : "")
            << '\n';
    }
}

void append_csv_file(const std::string& path, std::span<const ExperimentRecord> records) {
    namespace fs = std::filesystem;
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw ContractViolation("cannot open '" + path + "' for appending");
    write_csv(out, records, fresh);
}

nlohmann::json records_to_json(std::span<const ExperimentRecord> records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j{{"experiment", r.experiment}, {"algorithm", r.algorithm},
                         {"n", r.n},                   {"kappa", r.kappa},
                         {"seed", r.seed},             {"rel_error", r.rel_error},
                         {"wall_time_s", r.wall_time_s}};
        if (r.bound) j["bound"] = *r.bound;
        if (!r.branch_consistent) j["branch_consistent"] = false;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace bilistab
