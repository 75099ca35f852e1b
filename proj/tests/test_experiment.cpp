#include <cstdlib>
#include <sstream>

#include "doctest.h"

#include "pint/config.hpp"
#include "pint/experiment.hpp"

using namespace pint;
using nlohmann::json;

TEST_SUITE("config parsing") {
    TEST_CASE("defaults") {
        const ExperimentConfig cfg = parse_config(json::object(), json::object());
        CHECK(cfg.problem == "linear-scalar");
        CHECK(cfg.N == 10);
        CHECK(cfg.m == 4);
        CHECK(cfg.K == 5);
        CHECK(cfg.coarse == CoarseKind::ForwardEuler);
        CHECK(cfg.workers == 1);
        CHECK(cfg.study == Study::Run);
        CHECK(cfg.seed == 42);
        CHECK_FALSE(cfg.output_dir.empty());
    }

    TEST_CASE("flags override the config file") {
        json file = {{"N", 10}, {"problem", "linear-decay"}};
        json flags = {{"N", 40}};
        const ExperimentConfig cfg = parse_config(file, flags);
        CHECK(cfg.N == 40);
        CHECK(cfg.problem == "linear-decay");
    }

    TEST_CASE("K exceeding N is a structured error") {
        json flags = {{"problem", "linear-scalar"}, {"N", 20}, {"K", 21}};
        CHECK_THROWS_WITH_AS(parse_config(json::object(), flags), "K exceeds N",
                             SolverError);
    }

    TEST_CASE("unknown keys and invalid enums are named") {
        CHECK_THROWS_WITH_AS(parse_config(json{{"tolerance", 1.0}}, json::object()),
                             "unknown config key 'tolerance'", SolverError);
        CHECK_THROWS_AS(parse_config(json{{"study", "plot"}}, json::object()), SolverError);
        CHECK_THROWS_AS(parse_config(json{{"coarse", "rk2"}}, json::object()), SolverError);
        CHECK_THROWS_AS(parse_config(json{{"N", "ten"}}, json::object()), SolverError);
        CHECK_THROWS_AS(parse_config(json{{"problem", "lorenz"}}, json::object()), SolverError);
    }

    TEST_CASE("environment variable supplies the default output dir") {
        setenv("PINT_OUTPUT_DIR", "env-dir", 1);
        CHECK(parse_config(json::object(), json::object()).output_dir == "env-dir");
        json flags = {{"output_dir", "flag-dir"}};
        CHECK(parse_config(json::object(), flags).output_dir == "flag-dir");
        unsetenv("PINT_OUTPUT_DIR");
        CHECK(parse_config(json::object(), json::object()).output_dir == "pint-out");
    }

    TEST_CASE("study and coarse round-trip through strings") {
        for (Study s : {Study::Run, Study::Bounds, Study::DefectOrder,
                        Study::IntegratorOrder, Study::Conditions, Study::Phi1, Study::All})
            CHECK(study_from_string(to_string(s)) == s);
        for (CoarseKind k : {CoarseKind::ForwardEuler, CoarseKind::BackwardEuler})
            CHECK(coarse_from_string(to_string(k)) == k);
    }
}

TEST_SUITE("csv serialization") {
    TEST_CASE("doubles round-trip bitwise through 17 significant digits") {
        for (double v : {0.1, 1.0 / 3.0, 2.718281828459045, 5.8922e-12,
                         0.46734619140625, 1e-300, -123456.789012345678}) {
            const std::string s = format_cell(Cell{v});
            CHECK(std::strtod(s.c_str(), nullptr) == v);
        }
        CHECK(format_cell(Cell{static_cast<long long>(42)}) == "42");
        CHECK(format_cell(Cell{std::string("abc")}) == "abc");
    }

    TEST_CASE("tables carry a header row") {
        Table t{"demo", {"a", "b"}, {{Cell{1LL}, Cell{0.5}}}};
        const std::string csv = to_csv(t);
        CHECK(csv.substr(0, 4) == "a,b\n");
        CHECK(csv.find("1,0.5\n") != std::string::npos);
    }
}

TEST_SUITE("run_experiment") {
    TEST_CASE("zero-rhs run study: all errors zero, exit 0") {
        ExperimentConfig cfg;
        cfg.problem = "zero-rhs";
        cfg.study = Study::Run;
        cfg.output_dir.clear();  // no files
        std::ostringstream log;
        const auto outcome = run_experiment(cfg, log);
        CHECK(outcome.exit_code == 0);
        const Table* sup = outcome.report.find_table("sup_errors");
        REQUIRE(sup != nullptr);
        for (const auto& row : sup->rows) CHECK(std::get<double>(row[1]) == 0.0);
        CHECK(log.str().find("[PASS]") != std::string::npos);
    }

    TEST_CASE("bounds study on linear-scalar passes dominance") {
        ExperimentConfig cfg;
        cfg.problem = "linear-scalar";
        cfg.study = Study::Bounds;
        cfg.output_dir.clear();
        std::ostringstream log;
        const auto outcome = run_experiment(cfg, log);
        CHECK(outcome.exit_code == 0);
        CHECK(outcome.report.find_table("z_triangle") != nullptr);
        CHECK(outcome.report.find_table("bounds") != nullptr);
        CHECK(outcome.report.find_table("dominance") != nullptr);
        CHECK(log.str().find("[FAIL]") == std::string::npos);
    }

    TEST_CASE("defect-order study reports slope ~2") {
        ExperimentConfig cfg;
        cfg.problem = "linear-scalar";
        cfg.study = Study::DefectOrder;
        cfg.output_dir.clear();
        std::ostringstream log;
        const auto outcome = run_experiment(cfg, log);
        CHECK(outcome.exit_code == 0);
        const Table* fits = outcome.report.find_table("order_fits");
        REQUIRE(fits != nullptr);
        REQUIRE_FALSE(fits->rows.empty());
        const double slope = std::get<double>(fits->rows[0][3]);
        CHECK(slope >= 1.9);
        CHECK(slope <= 2.1);
    }

    TEST_CASE("reports are byte-identical across worker counts and reruns") {
        auto render = [](int workers) {
            ExperimentConfig cfg;
            cfg.problem = "nonautonomous";
            cfg.study = Study::All;
            cfg.workers = workers;
            cfg.output_dir.clear();
            std::ostringstream log;
            const auto outcome = run_experiment(cfg, log);
            std::string blob = log.str();
            for (const auto& t : outcome.report.tables) blob += to_csv(t);
            return blob;
        };
        const std::string one = render(1);
        CHECK(render(1) == one);  // rerun
        CHECK(render(4) == one);  // more workers
    }

    TEST_CASE("backward-Euler bounds study uses the theorem-2 column") {
        ExperimentConfig cfg;
        cfg.problem = "linear-scalar";
        cfg.coarse = CoarseKind::BackwardEuler;
        cfg.study = Study::Bounds;
        cfg.output_dir.clear();
        std::ostringstream log;
        const auto outcome = run_experiment(cfg, log);
        CHECK(outcome.exit_code == 0);
        const Table* bounds = outcome.report.find_table("bounds");
        REQUIRE(bounds != nullptr);
        CHECK(bounds->columns.back() == "theorem2_bound");
    }
}
