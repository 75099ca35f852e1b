#include <cmath>

#include "doctest.h"

#include "pint/bounds.hpp"
#include "pint/parareal.hpp"

using namespace pint;

namespace {

PararealConfig fe_config(int K, int workers = 1) {
    PararealConfig cfg;
    cfg.coarse = CoarseMethod::forward_euler();
    cfg.max_iterations = K;
    cfg.workers = workers;
    return cfg;
}

}  // namespace

TEST_SUITE("parareal init") {
    TEST_CASE("zero-rhs gives a constant row") {
        const OdeProblem zero = builtin_problem("zero-rhs");
        const auto row = parareal_init(zero, Mesh(0.0, 1.0, 6, 2),
                                       CoarseMethod::forward_euler());
        for (const auto& u : row) CHECK(u[0] == 1.0);
    }

    TEST_CASE("linear-scalar coarse sweeps") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const auto row2 = parareal_init(ls, Mesh(0.0, 1.0, 2, 1),
                                        CoarseMethod::forward_euler());
        CHECK(row2[0][0] == 1.0);
        CHECK(row2[1][0] == 1.5);
        CHECK(row2[2][0] == 2.25);

        // u_N = 1.1^10, accumulated with the same update u + h*f
        const auto row10 = parareal_init(ls, Mesh(0.0, 1.0, 10, 1),
                                         CoarseMethod::forward_euler());
        double expected = 1.0;
        for (int i = 0; i < 10; ++i) expected = expected + 0.1 * expected;
        CHECK(row10[10][0] == expected);
        CHECK(row10[10][0] == doctest::Approx(2.5937424601).epsilon(1e-10));
    }
}

TEST_SUITE("defect sweep") {
    TEST_CASE("zero-rhs defects vanish") {
        const OdeProblem zero = builtin_problem("zero-rhs");
        const Mesh mesh(0.0, 1.0, 4, 3);
        const auto row = parareal_init(zero, mesh, CoarseMethod::forward_euler());
        for (const auto& xi : defect_sweep(zero, mesh, row, CoarseMethod::forward_euler(), 2))
            CHECK(sup_norm(xi) == 0.0);
    }

    TEST_CASE("frozen first-interval defects") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        // 1.6484375 - 1.5, exact in binary
        const Mesh mesh2(0.0, 1.0, 2, 1);
        const auto row2 = parareal_init(ls, mesh2, CoarseMethod::forward_euler());
        const auto xi2 = defect_sweep(ls, mesh2, row2, CoarseMethod::forward_euler(), 1);
        CHECK(xi2[0][0] == 0.1484375);

        // 1.1051708333... - 1.1
        const Mesh mesh10(0.0, 1.0, 10, 1);
        const auto row10 = parareal_init(ls, mesh10, CoarseMethod::forward_euler());
        const auto xi10 = defect_sweep(ls, mesh10, row10, CoarseMethod::forward_euler(), 1);
        CHECK(xi10[0][0] == doctest::Approx(0.0051708333333333).epsilon(1e-12));
    }

    TEST_CASE("parallel sweep is bit-identical to the serial reference") {
        const OdeProblem na = builtin_problem("nonautonomous");
        const Mesh mesh(0.0, 1.0, 16, 4);
        const auto row = parareal_init(na, mesh, CoarseMethod::forward_euler());
        const auto serial = defect_sweep_serial(na, mesh, row, CoarseMethod::forward_euler());
        for (int workers : {1, 2, 4, 8}) {
            const auto par = defect_sweep(na, mesh, row, CoarseMethod::forward_euler(), workers);
            REQUIRE(par.size() == serial.size());
            for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == serial[i]);
        }
    }

    TEST_CASE("row length is validated") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const Mesh mesh(0.0, 1.0, 4, 1);
        std::vector<StateVec> bad(3, StateVec{1.0});
        CHECK_THROWS_AS(defect_sweep(ls, mesh, bad, CoarseMethod::forward_euler(), 1),
                        SolverError);
    }

    TEST_CASE("a blow-up inside a worker aborts the sweep with the diagnostic") {
        const OdeProblem hot = make_problem(
            [](double, const StateVec& x) { return 1e154 * x; },
            0.0, 1.0, StateVec{1.0}, 1e154, true);
        const Mesh mesh(0.0, 1.0, 4, 2);
        std::vector<StateVec> row(5, StateVec{1e154});
        CHECK_THROWS_WITH_AS(
            defect_sweep(hot, mesh, row, CoarseMethod::forward_euler(), 4),
            "integration blow-up", SolverError);
    }
}

TEST_SUITE("parareal iterate") {
    TEST_CASE("frozen N=2 rows, h=0.5, m=1") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const Mesh mesh(0.0, 1.0, 2, 1);
        const CoarseMethod fe = CoarseMethod::forward_euler();

        const auto row0 = parareal_init(ls, mesh, fe);
        const auto row1 = parareal_iterate(ls, mesh, row0, fe, 1);
        CHECK(row1[0][0] == 1.0);
        CHECK(row1[1][0] == 1.6484375);
        CHECK(row1[2][0] == 2.6953125);

        // k = N reproduces the serial fine solution exactly
        const auto row2 = parareal_iterate(ls, mesh, row1, fe, 1);
        CHECK(row2[1][0] == 1.6484375);
        CHECK(row2[2][0] == 2.71734619140625);
    }

    TEST_CASE("zero-rhs rows are fixed points") {
        const OdeProblem zero = builtin_problem("zero-rhs");
        const Mesh mesh(0.0, 1.0, 5, 2);
        const auto row0 = parareal_init(zero, mesh, CoarseMethod::forward_euler());
        const auto row1 = parareal_iterate(zero, mesh, row0, CoarseMethod::forward_euler(), 2);
        for (const auto& u : row1) CHECK(u[0] == 1.0);
    }
}

TEST_SUITE("parareal run") {
    TEST_CASE("zero-rhs errors vanish identically") {
        const OdeProblem zero = builtin_problem("zero-rhs");
        const auto run = parareal_run(zero, Mesh(0.0, 1.0, 8, 2), fe_config(4));
        for (const auto& row : run.errors)
            for (double e : row) CHECK(e == 0.0);
    }

    TEST_CASE("frozen sup_errors for N=2, h=0.5, m=1, K=2") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const auto run = parareal_run(ls, Mesh(0.0, 1.0, 2, 1), fe_config(2));
        REQUIRE(run.sup_errors.size() == 3);
        CHECK(run.sup_errors[0] == 0.46734619140625);
        CHECK(run.sup_errors[1] == 0.02203369140625);
        CHECK(run.sup_errors[2] == 0.0);
        CHECK(run.iterations_performed == 2);
    }

    TEST_CASE("K=N finalization reaches the floating-point floor") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const auto run = parareal_run(ls, Mesh(0.0, 1.0, 10, 1), fe_config(10));
        CHECK(run.sup_errors[10] <= 1e-12);
    }

    TEST_CASE("exactness ladder (converged prefix) for every catalog problem") {
        for (const auto& name : {"linear-scalar", "linear-decay", "nonautonomous"}) {
            const OdeProblem p = builtin_problem(name);
            const auto run = parareal_run(p, Mesh(0.0, 1.0, 10, 4), fe_config(10));
            for (int k = 0; k <= run.iterations_performed; ++k)
                for (int n = 0; n <= std::min(k, 10); ++n)
                    CHECK(run.errors[k][n] <=
                          1e-12 * (1.0 + sup_norm(run.reference[n])));
        }
    }

    TEST_CASE("row k agrees with row k-1 on indices 0..k-1 (copy semantics)") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const auto run = parareal_run(ls, Mesh(0.0, 1.0, 10, 4), fe_config(6));
        for (int k = 1; k <= run.iterations_performed; ++k)
            for (int n = 0; n < k && n <= 10; ++n) {
                const double gap = sup_norm(run.iterates[k][n] - run.iterates[k - 1][n]);
                CHECK(gap <= 1e-12 * (1.0 + sup_norm(run.reference[n])));
            }
    }

    TEST_CASE("u_0^(k) stays pinned to x0") {
        const OdeProblem na = builtin_problem("nonautonomous");
        const auto run = parareal_run(na, Mesh(0.0, 1.0, 6, 2), fe_config(6));
        for (const auto& row : run.iterates) CHECK(row[0] == na.x0);
    }

    TEST_CASE("error recurrence domination (proof shape, k >= 1)") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const Mesh mesh(0.0, 1.0, 10, 4);
        const auto run = parareal_run(ls, mesh, fe_config(5));
        const double L = ls.lipschitz_L;
        const double b = 1.0 + mesh.h() * L;
        const double a = mesh.h() * (L + rk4_lipschitz_M(L, mesh.h()));
        for (int k = 1; k <= run.iterations_performed; ++k)
            for (int n = 1; n <= 10; ++n)
                CHECK(run.errors[k][n] <=
                      b * run.errors[k][n - 1] + a * run.errors[k - 1][n - 1] + 1e-10);
    }

    TEST_CASE("sup_errors decrease monotonically down to the floor") {
        for (const auto& name : {"linear-scalar", "linear-decay", "nonautonomous"}) {
            const OdeProblem p = builtin_problem(name);
            const auto run = parareal_run(p, Mesh(0.0, 1.0, 10, 4), fe_config(10));
            for (int k = 0; k < run.iterations_performed; ++k) {
                const bool ok = run.sup_errors[k + 1] <= run.sup_errors[k] ||
                                run.sup_errors[k + 1] <= 1e-12;
                CHECK(ok);
            }
        }
    }

    TEST_CASE("worker count never changes the result") {
        const OdeProblem na = builtin_problem("nonautonomous");
        const Mesh mesh(0.0, 1.0, 12, 3);
        const auto run1 = parareal_run(na, mesh, fe_config(6, 1));
        const auto run4 = parareal_run(na, mesh, fe_config(6, 4));
        REQUIRE(run1.iterates.size() == run4.iterates.size());
        for (std::size_t k = 0; k < run1.iterates.size(); ++k)
            for (std::size_t n = 0; n < run1.iterates[k].size(); ++n)
                CHECK(run1.iterates[k][n] == run4.iterates[k][n]);
    }

    TEST_CASE("early stop is not an error") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        PararealConfig cfg = fe_config(10);
        cfg.stop_tolerance = 1e-6;
        const auto run = parareal_run(ls, Mesh(0.0, 1.0, 10, 4), cfg);
        CHECK(run.iterations_performed < 10);
        CHECK(run.iterations_performed >= 1);
        CHECK(run.errors.size() == run.iterates.size());
    }

    TEST_CASE("backward-Euler coarse run converges the same way") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        PararealConfig cfg;
        cfg.coarse = CoarseMethod::backward_euler();
        cfg.max_iterations = 5;
        const auto run = parareal_run(ls, Mesh(0.0, 1.0, 10, 4), cfg);
        CHECK(run.sup_errors[0] > run.sup_errors[3]);
        CHECK(run.sup_errors[5] <= 1e-10);
    }

    TEST_CASE("configuration validation") {
        const OdeProblem ls = builtin_problem("linear-scalar");
        const Mesh mesh(0.0, 1.0, 4, 1);
        CHECK_THROWS_WITH_AS(parareal_run(ls, mesh, fe_config(5)), "K exceeds N",
                             SolverError);
        PararealConfig bad = fe_config(2);
        bad.workers = 0;
        CHECK_THROWS_AS(parareal_run(ls, mesh, bad), SolverError);
        bad = fe_config(2);
        bad.stop_tolerance = -1.0;
        CHECK_THROWS_AS(parareal_run(ls, mesh, bad), SolverError);
        // mesh built for a different horizon
        CHECK_THROWS_AS(parareal_run(ls, Mesh(0.0, 2.0, 4, 1), fe_config(2)), SolverError);
    }
}
