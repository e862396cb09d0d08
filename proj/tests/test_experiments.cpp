#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "bilistab/errors.hpp"
#include "bilistab/experiments.hpp"

using namespace bilistab;

namespace {

ExperimentConfig small_cmm_config() {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::cmm_accuracy;
    cfg.n = 8;
    cfg.trials = 2;
    cfg.kappa_list = {16, 1024};
    cfg.seed = 5;
    return cfg;
}

bool same_modulo_timing(const ExperimentRecord& a, const ExperimentRecord& b) {
    return a.experiment == b.experiment && a.algorithm == b.algorithm && a.n == b.n &&
           a.kappa == b.kappa && a.seed == b.seed && a.rel_error == b.rel_error &&
           a.bound == b.bound && a.branch_consistent == b.branch_consistent;
}

}  // namespace

TEST_CASE("default kappa grid") {
    const auto grid = default_kappa_list();
    REQUIRE(grid.size() == 10);
    CHECK(grid.front() == (uint64_t{1} << 34));
    CHECK(grid.back() == (uint64_t{1} << 53));
    for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("cmm accuracy records are deterministic and bounded") {
    const auto cfg = small_cmm_config();
    const auto first = run_cmm_accuracy(cfg);
    const auto second = run_cmm_accuracy(cfg);
    REQUIRE(first.size() == second.size());
    REQUIRE(first.size() == cfg.kappa_list.size() * cfg.trials * 3);
    for (size_t i = 0; i < first.size(); ++i) {
        CHECK(same_modulo_timing(first[i], second[i]));
        CHECK(first[i].rel_error >= 0.0);
        if (first[i].algorithm == "regular") {
            CHECK_FALSE(first[i].bound.has_value());
        } else {
            REQUIRE(first[i].bound.has_value());
            // Errors respect the recorded first-order bound with slack.
            CHECK(first[i].rel_error <= *first[i].bound * 1.01);
        }
    }
}

TEST_CASE("fmm with recursion disabled produces identical errors") {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::fmm_accuracy;
    cfg.n = 16;
    cfg.cutoff = 16;
    cfg.trials = 2;
    cfg.seed = 3;
    const auto records = run_fmm_accuracy(cfg);
    REQUIRE(records.size() == 6);
    // conventional / strassen / winograd per trial, all bitwise equal here.
    for (size_t t = 0; t < 2; ++t) {
        CHECK(records[3 * t].rel_error == records[3 * t + 1].rel_error);
        CHECK(records[3 * t].rel_error == records[3 * t + 2].rel_error);
    }
    CHECK_THROWS_AS(run_fmm_accuracy([] {
                        ExperimentConfig bad;
                        bad.experiment = ExperimentId::fmm_accuracy;
                        bad.n = 24;  // not a power of 2
                        return bad;
                    }()),
                    ContractViolation);
    CHECK_THROWS_AS(run_fmm_accuracy([] {
                        ExperimentConfig bad;
                        bad.experiment = ExperimentId::fmm_accuracy;
                        bad.n = 256;  // oracle-infeasible
                        return bad;
                    }()),
                    OracleInfeasible);
}

TEST_CASE("speed records carry timings only") {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::cmm_speed;
    cfg.n = 48;
    cfg.trials = 2;
    cfg.speed_repeats = 2;
    const auto records = run_cmm_speed(cfg);
    REQUIRE(records.size() == 6);
    for (const auto& r : records) {
        CHECK(r.wall_time_s > 0.0);
        CHECK(r.rel_error == 0.0);
        CHECK(r.kappa == 0.0);
        CHECK_FALSE(r.bound.has_value());
    }
}

TEST_CASE("horner at degree 0 is exact and X = I stays near the scalar sum") {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::horner;
    cfg.n = 8;
    cfg.trials = 1;
    cfg.degree = 0;
    cfg.kappa_list = {64};
    for (const auto& r : run_horner(cfg)) CHECK(r.rel_error == 0.0);

    // Test hook: X = I makes every P = P X product exact, so the only error
    // is the scalar coefficient accumulation.
    const int n = 6, d = 5;
    ComplexMatrix eye(n, n);
    for (int i = 0; i < n; ++i) eye.re(i, i) = 1.0;
    const std::vector<double> coeffs{0.37, 0.91, 0.22, 0.55, 0.18, 0.73};
    const ExactMatrixC exact = horner_eval_exact(eye, coeffs);
    for (const CmmKind kind : {CmmKind::regular, CmmKind::gauss, CmmKind::new_alg}) {
        const ComplexMatrix s = horner_eval(eye, coeffs, {kind, CmmBackend::conventional, {}});
        double scale = 0.0;
        for (double a : coeffs) scale += a;
        const double err = max_norm_rel_error(s, exact, scale, 1.0);
        CHECK(err <= 10.0 * d * 0x1p-53);
    }
}

TEST_CASE("unitary identity hook") {
    // With U = I the regular scheme reproduces X bitwise; the others stay
    // within their bounds but see real rounding.
    const int n = 8;
    ComplexMatrix eye(n, n);
    for (int i = 0; i < n; ++i) eye.re(i, i) = 1.0;
    const ComplexMatrix x = gen_random_complex(n, n, Dist::uniform(-1.0, 1.0), 17);
    const ExactMatrixC exact = exact_matmul(to_exact(eye), to_exact(x));
    const double sx = max_abs(x);
    CHECK(max_norm_rel_error(cmm(eye, x, {CmmKind::regular, CmmBackend::conventional, {}}),
                             exact, 1.0, sx) == 0.0);
    for (const CmmKind kind : {CmmKind::gauss, CmmKind::new_alg}) {
        const double err =
            max_norm_rel_error(cmm(eye, x, {kind, CmmBackend::conventional, {}}), exact, 1.0, sx);
        CHECK(err <= (n + 10) * 8 * 0x1p-53);
    }
}

TEST_CASE("complex relu") {
    CHECK(complex_relu({1.0, -2.0}) == std::complex<double>(1.0, 0.0));
    CHECK(complex_relu({-1.0, -1.0}) == std::complex<double>(0.0, 0.0));
    CHECK(complex_relu({0.5, 2.0}) == std::complex<double>(0.5, 2.0));

    // Idempotent bitwise.
    for (const std::complex<double> z :
         {std::complex<double>(0.3, -0.4), {-0.0, 0.0}, {1e-300, -1e-300}, {5.0, 7.0}}) {
        CHECK(complex_relu(complex_relu(z)) == complex_relu(z));
    }

    CHECK(exact_complex_relu({BigRational(1), BigRational(-2)}) ==
          GaussianRational(BigRational(1), BigRational(0)));
}

TEST_CASE("cnn records flag branch consistency and reproduce deterministically") {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentId::cnn;
    cfg.n = 8;
    cfg.trials = 2;
    cfg.depth = 3;
    cfg.cnn_inputs = 4;
    cfg.kappa_list = {256};
    cfg.seed = 11;
    const auto records = run_cnn(cfg);
    REQUIRE(records.size() == 6);
    const auto again = run_cnn(cfg);
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(same_modulo_timing(records[i], again[i]));
        CHECK(records[i].rel_error >= 0.0);
    }
}

TEST_CASE("CSV output is append-only and schema-stable") {
    const auto cfg = small_cmm_config();
    auto records = run_cmm_accuracy(cfg);
    std::ostringstream out;
    write_csv(out, records, true);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "experiment,algorithm,n,kappa,seed,rel_error,wall_time_s,bound");

    const std::string path = "/tmp/bilistab_test_records.csv";
    std::remove(path.c_str());
    append_csv_file(path, records);
    append_csv_file(path, records);
    std::ifstream in(path);
    size_t line_count = 0;
    std::string line;
    while (std::getline(in, line)) ++line_count;
    CHECK(line_count == 1 + 2 * records.size());
    std::remove(path.c_str());

    //

    // Non-timing fields are byte-stable across runs with the same config.
    std::ostringstream first_csv, second_csv;
    write_csv(first_csv, records, false);
    write_csv(second_csv, run_cmm_accuracy(cfg), false);
    std::istringstream a(first_csv.str()), b(second_csv.str());
    std::string la, lb;
    while (std::getline(a, la) && std::getline(b, lb)) {
        // Blank out the wall_time column (7th).
        auto strip_time = [](std::string s) {
            size_t pos = 0;
            for (int c = 0; c < 6; ++c) pos = s.find(',', pos) + 1;
            const size_t end = s.find(',', pos);
            return s.substr(0, pos) + s.substr(end);
        };
        CHECK(strip_time(la) == strip_time(lb));
    }

    const nlohmann::json j = records_to_json(records);
    CHECK(j.is_array());
    CHECK(j.size() == records.size());
    CHECK(j[0].contains("rel_error"));
}
