#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bilistab/bounds.hpp"
#include "bilistab/catalog.hpp"
#include "bilistab/errors.hpp"
#include "bilistab/experiments.hpp"
#include "bilistab/generators.hpp"
#include "bilistab/tensor_core.hpp"

namespace {

using namespace bilistab;

struct OutputOptions {
    std::string path;
    std::string format = "csv";
};

void emit_records(const std::vector<ExperimentRecord>& records, const OutputOptions& out) {
    if (out.format == "json") {
        const nlohmann::json j = records_to_json(records);
        if (out.path.empty()) {
            std::cout << j.dump(2) << '\n';
        } else {
            std::ofstream f(out.path);
            if (!f) throw ContractViolation("cannot write '" + out.path + "'");
            f << j.dump(2) << '\n';
        }
        return;
    }
    if (out.path.empty()) {
        write_csv(std::cout, records, true);
    } else {
        append_csv_file(out.path, records);
    }
}

BilinearDecomposition resolve_decomposition(const std::string& builtin, const std::string& file) {
    if (!builtin.empty() && !file.empty()) {
        throw ContractViolation("pass either --builtin or --file, not both");
    }
    if (!builtin.empty()) return get_builtin(builtin).decomposition;
    if (!file.empty()) return load_decomposition(file);
    throw ContractViolation("one of --builtin or --file is required");
}

std::vector<CmmKind> parse_algos(const std::string& csv) {
    std::vector<CmmKind> kinds;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) kinds.push_back(cmm_kind_from_string(token));
    }
    if (kinds.empty()) throw ContractViolation("--algo needs at least one scheme");
    return kinds;
}

void print_catalog_list() {
    std::printf("%-24s %4s %16s %14s\n", "name", "r", "growth_factor", "nuclear_norm");
    for (const CatalogRow& row : catalog_constants()) {
        if (row.nuclear_norm) {
            std::printf("%-24s %4d %16.10f %14.10g\n", row.name.c_str(), row.rank,
                        row.growth_factor, *row.nuclear_norm);
        } else {
            std::printf("%-24s %4d %16.10f %14s\n", row.name.c_str(), row.rank,
                        row.growth_factor, "unknown");
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"bilinear algorithms as tensor decompositions: growth factors, exact "
                 "verification, fast and complex matrix multiplication, error bounds and "
                 "reproducible experiments"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--output", out.path, "write records to this file");
    app.add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // catalog ----------------------------------------------------------------
    auto* catalog_cmd = app.add_subcommand("catalog", "built-in decompositions");
    catalog_cmd->require_subcommand(1);
    catalog_cmd->add_subcommand("list", "constants table")->callback(print_catalog_list);
    auto* show = catalog_cmd->add_subcommand("show", "print one decomposition");
    std::string show_name;
    bool show_json = false;
    show->add_option("name", show_name, "builtin name")->required();
    show->add_flag("--json", show_json, "emit the JSON decomposition format");
    show->callback([&] {
        const CatalogEntry entry = get_builtin(show_name);
        if (show_json) {
            std::cout << decomposition_to_json(entry.decomposition).dump(2) << '\n';
            return;
        }
        std::cout << entry.decomposition.name() << ": r = " << entry.decomposition.rank_bound()
                  << ", growth factor = " << growth_factor(entry.decomposition) << " ("
                  << entry.closed_form_expression << ")\n"
                  << "source: " << entry.source << '\n';
        if (entry.known_nuclear_norm) {
            std::cout << "nuclear norm: " << *entry.known_nuclear_norm << '\n';
        }
    });

    // growth-factor ----------------------------------------------------------
    auto* growth = app.add_subcommand("growth-factor", "growth factor of a decomposition");
    std::string growth_builtin, growth_file;
    growth->add_option("--builtin", growth_builtin, "builtin name");
    growth->add_option("--file", growth_file, "decomposition JSON file");
    growth->callback([&] {
        const BilinearDecomposition d = resolve_decomposition(growth_builtin, growth_file);
        std::printf("%.17g\n", growth_factor(d));
    });

    // verify ------------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "exact verification against a target tensor");
    std::string verify_builtin, verify_file, verify_against;
    verify->add_option("--builtin", verify_builtin, "builtin name");
    verify->add_option("--file", verify_file, "decomposition JSON file");
    verify->add_option("--against", verify_against,
                       "reference: 'matmul' (2x2), 'complex', or a builtin name");
    verify->callback([&] {
        const BilinearDecomposition d = resolve_decomposition(verify_builtin, verify_file);
        DenseTensor3 reference = [&]() -> DenseTensor3 {
            if (verify_against.empty()) {
                if (!verify_builtin.empty()) return get_builtin(verify_builtin).target_tensor();
                if (d.dims() == std::array<int, 3>{4, 4, 4}) return matmul_tensor(2, 2, 2);
                if (d.dims() == std::array<int, 3>{2, 2, 2}) return complex_mult_tensor();
                throw ContractViolation("cannot infer a target tensor; pass --against");
            }
            if (verify_against == "matmul") return matmul_tensor(2, 2, 2);
            if (verify_against == "complex") return complex_mult_tensor();
            return get_builtin(verify_against).target_tensor();
        }();
        const bool ok = verify_decomposition(d, reference);
        std::cout << (ok ? "PASS" : "FAIL") << ": " << d.name()
                  << (ok ? " reproduces" : " does not reproduce")
                  << " the target tensor exactly\n";
        if (!ok) std::exit(1);
    });

    // bounds ------------------------------------------------------------------
    auto* bounds_cmd = app.add_subcommand("bounds", "theoretical forward-error bounds");
    std::string thm = "main";
    int b_m = 2, b_n = 2, b_r = 3, b_size = 64;
    double b_gamma = 4.0, b_norm_u = 1.0, b_norm_v = 1.0, b_theta = 1.0, b_u = 0x1p-53;
    bounds_cmd->add_option("--thm", thm, "main, new, gauss or asym")
        ->check(CLI::IsMember({"main", "new", "gauss", "asym"}));
    bounds_cmd->add_option("--m", b_m, "input space dimension");
    bounds_cmd->add_option("--n", b_n, "second input space dimension");
    bounds_cmd->add_option("--r", b_r, "term count");
    bounds_cmd->add_option("--gamma", b_gamma, "growth factor");
    bounds_cmd->add_option("--norm-u", b_norm_u, "first input norm");
    bounds_cmd->add_option("--norm-v", b_norm_v, "second input norm");
    bounds_cmd->add_option("--size", b_size, "matrix size for new/gauss/asym");
    bounds_cmd->add_option("--theta", b_theta, "entry magnitude for new/gauss/asym");
    bounds_cmd->add_option("--unit-roundoff", b_u, "unit roundoff (default 2^-53)");
    bounds_cmd->callback([&] {
        const UnitRoundoff u{b_u};
        if (thm == "main") {
            std::cout << thm_main_bound(b_m, b_n, b_r, b_gamma, b_norm_u, b_norm_v, u)
                             .to_json()
                             .dump(2)
                      << '\n';
            return;
        }
        if (thm == "asym") {
            std::cout << asymptotic_compare(b_size, b_theta, u).to_json().dump(2) << '\n';
            return;
        }
        // Entrywise bounds for constant-magnitude inputs |A|=|B|=|C|=|D|=theta.
        RealMatrix ones(b_size, b_size);
        for (size_t i = 0; i < ones.size(); ++i) ones.data()[i] = b_theta;
        const auto [re, im] = thm == "new" ? new_alg_entrywise_bounds(ones, ones, ones, ones, u)
                                           : gauss_entrywise_bounds(ones, ones, ones, ones, u);
        nlohmann::json j{{"theorem", thm},
                         {"n", b_size},
                         {"theta", b_theta},
                         {"unit_roundoff", b_u},
                         {"real_part_bound", re(0, 0)},
                         {"imag_part_bound", im(0, 0)},
                         {"slack_factor", 1.01}};
        std::cout << j.dump(2) << '\n';
    });

    // shared experiment options ------------------------------------------------
    struct ExpFlags {
        std::string n_csv = "64";
        int trials = 10;
        uint64_t seed = 1;
        std::string algos = "regular,gauss,new";
        int kappa_min = 34, kappa_max = 53, kappa_points = 10;
        int cutoff = 2;
        int degree = 5;
        int depth = 6;
        int cnn_inputs = 0;
        int repeats = 3;
        bool normalize = false;
        std::string dist = "uniform";
        bool complex_inputs = false;
    } flags;

    auto add_common = [&flags](CLI::App* cmd, bool kappa) {
        cmd->add_option("--n", flags.n_csv, "matrix size(s), comma separated");
        cmd->add_option("--trials", flags.trials, "trials per configuration");
        cmd->add_option("--seed", flags.seed, "base seed");
        if (kappa) {
            cmd->add_option("--kappa-min", flags.kappa_min, "smallest condition exponent");
            cmd->add_option("--kappa-max", flags.kappa_max, "largest condition exponent");
            cmd->add_option("--kappa-points", flags.kappa_points, "grid size");
            cmd->add_flag("--normalize", flags.normalize,
                          "rescale conditioned inputs by an exact power of 2");
        }
    };
    auto make_config = [&flags](ExperimentId id, int n) {
        ExperimentConfig cfg;
        cfg.experiment = id;
        cfg.n = n;
        cfg.trials = flags.trials;
        cfg.seed = flags.seed;
        cfg.algos = parse_algos(flags.algos);
        cfg.kappa_list = default_kappa_list(flags.kappa_min, flags.kappa_max, flags.kappa_points);
        cfg.cutoff = flags.cutoff;
        cfg.degree = flags.degree;
        cfg.depth = flags.depth;
        cfg.cnn_inputs = flags.cnn_inputs;
        cfg.speed_repeats = flags.repeats;
        cfg.normalize = flags.normalize;
        cfg.complex_inputs = flags.complex_inputs;
        if (flags.dist == "normal") {
            cfg.dist = Dist::normal();
        } else if (flags.dist == "uniform01") {
            cfg.dist = Dist::uniform(0.0, 1.0);
        } else {
            cfg.dist = Dist::uniform(-1.0, 1.0);
        }
        return cfg;
    };
    auto n_values = [&flags] {
        std::vector<int> ns;
        std::stringstream ss(flags.n_csv);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (!token.empty()) ns.push_back(std::stoi(token));
        }
        if (ns.empty()) throw ContractViolation("--n needs at least one size");
        return ns;
    };

    // bench --------------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "complex multiplication benchmarks");
    bench->require_subcommand(1);
    auto* bench_speed = bench->add_subcommand("speed", "wall time, no oracle");
    add_common(bench_speed, false);
    bench_speed->add_option("--algo", flags.algos, "comma-separated schemes");
    bench_speed->add_option("--repeats", flags.repeats, "best-of-k timing");
    bench_speed->callback([&] {
        std::vector<ExperimentRecord> all;
        for (int n : n_values()) {
            auto cfg = make_config(ExperimentId::cmm_speed, n);
            auto records = run_cmm_speed(cfg);
            all.insert(all.end(), records.begin(), records.end());
        }
        emit_records(all, out);
    });
    auto* bench_acc = bench->add_subcommand("accuracy", "oracle-measured accuracy");
    add_common(bench_acc, true);
    bench_acc->add_option("--algo", flags.algos, "comma-separated schemes");
    bench_acc->callback([&] {
        std::vector<ExperimentRecord> all;
        for (int n : n_values()) {
            auto records = run_cmm_accuracy(make_config(ExperimentId::cmm_accuracy, n));
            all.insert(all.end(), records.begin(), records.end());
        }
        emit_records(all, out);
    });

    // experiment -----------------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "application experiments");
    experiment->require_subcommand(1);

    auto* fmm = experiment->add_subcommand("fmm", "Strassen/Winograd accuracy");
    add_common(fmm, false);
    fmm->add_option("--cutoff", flags.cutoff, "recursion cutoff");
    fmm->add_option("--dist", flags.dist, "uniform, normal")
        ->check(CLI::IsMember({"uniform", "normal"}));
    fmm->add_flag("--complex", flags.complex_inputs, "complex-element inputs");
    fmm->callback([&] {
        // Default sweep reports per-n curves when no size is given.
        if (fmm->count("--n") == 0) flags.n_csv = "16,32,64,128";
        std::vector<ExperimentRecord> all;
        for (int n : n_values()) {
            auto records = run_fmm_accuracy(make_config(ExperimentId::fmm_accuracy, n));
            all.insert(all.end(), records.begin(), records.end());
        }
        emit_records(all, out);
    });

    auto* horner = experiment->add_subcommand("horner", "matrix polynomial via Horner");
    add_common(horner, true);
    horner->add_option("--degree", flags.degree, "polynomial degree");
    horner->add_option("--algo", flags.algos, "comma-separated schemes");
    horner->callback([&] {
        std::vector<ExperimentRecord> all;
        for (int n : n_values()) {
            auto records = run_horner(make_config(ExperimentId::horner, n));
            all.insert(all.end(), records.begin(), records.end());
        }
        emit_records(all, out);
    });

    auto* unitary = experiment->add_subcommand("unitary", "unitary transform UX");
    add_common(unitary, true);
    unitary->add_option("--algo", flags.algos, "comma-separated schemes");
    unitary->callback([&] {
        std::vector<ExperimentRecord> all;
        for (int n : n_values()) {
            auto records = run_unitary(make_config(ExperimentId::unitary, n));
            all.insert(all.end(), records.begin(), records.end());
        }
        emit_records(all, out);
    });

    auto* cnn = experiment->add_subcommand("cnn", "complex ReLU network forward pass");
    add_common(cnn, true);
    cnn->add_option("--depth", flags.depth, "layer count");
    cnn->add_option("--inputs", flags.cnn_inputs, "input batch columns (0 = default)");
    cnn->add_option("--algo", flags.algos, "comma-separated schemes");
    cnn->callback([&] {
        std::vector<ExperimentRecord> all;
        for (int n : n_values()) {
            auto records = run_cnn(make_config(ExperimentId::cnn, n));
            all.insert(all.end(), records.begin(), records.end());
        }
        emit_records(all, out);
    });

    // gen ---------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "export generated matrices as text");
    gen->require_subcommand(1);
    int gen_n = 8;
    uint64_t gen_seed = 1, gen_kappa = 1024;
    bool gen_allow_rounding = false;
    auto add_gen_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", gen_n, "size");
        cmd->add_option("--seed", gen_seed, "seed");
    };
    auto write_real = [&](const RealMatrix& m) {
        if (out.path.empty()) {
            write_matrix_text(std::cout, m);
        } else {
            std::ofstream f(out.path);
            write_matrix_text(f, m);
        }
    };
    auto write_complex = [&](const ComplexMatrix& m) {
        if (out.path.empty()) {
            write_matrix_text(std::cout, m);
        } else {
            std::ofstream f(out.path);
            write_matrix_text(f, m);
        }
    };
    auto* gen_random_cmd = gen->add_subcommand("random", "uniform [-1,1] matrix");
    add_gen_common(gen_random_cmd);
    gen_random_cmd->callback(
        [&] { write_real(gen_random(gen_n, gen_n, Dist::uniform(-1.0, 1.0), gen_seed)); });
    auto* gen_hadamard_cmd = gen->add_subcommand("hadamard", "random signed-permuted Hadamard");
    add_gen_common(gen_hadamard_cmd);
    gen_hadamard_cmd->callback([&] { write_real(gen_hadamard(gen_n, gen_seed)); });
    auto* gen_cond = gen->add_subcommand("conditioned", "H Lambda H^T with kappa_2 = kappa");
    add_gen_common(gen_cond);
    gen_cond->add_option("--kappa", gen_kappa, "condition number");
    gen_cond->add_flag("--allow-rounding", gen_allow_rounding, "accept entries beyond 2^53");
    gen_cond->callback([&] {
        write_real(gen_conditioned({gen_n, gen_kappa, gen_seed, gen_allow_rounding}));
    });
    auto* gen_cond_c = gen->add_subcommand("conditioned-complex", "complex variant");
    add_gen_common(gen_cond_c);
    gen_cond_c->add_option("--kappa", gen_kappa, "condition number");
    gen_cond_c->add_flag("--allow-rounding", gen_allow_rounding, "accept entries beyond 2^53");
    gen_cond_c->callback([&] {
        write_complex(gen_conditioned_complex({gen_n, gen_kappa, gen_seed, gen_allow_rounding}));
    });
    auto* gen_unitary_cmd = gen->add_subcommand("unitary", "Householder QR unitary matrix");
    add_gen_common(gen_unitary_cmd);
    gen_unitary_cmd->callback([&] { write_complex(gen_unitary(gen_n, gen_seed)); });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const bilistab::OracleInfeasible& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const bilistab::ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
