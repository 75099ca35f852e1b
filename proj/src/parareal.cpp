#include "pint/parareal.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pint {

namespace {

void check_mesh_matches(const OdeProblem& problem, const Mesh& mesh) {
    const double scale = std::max({1.0, std::fabs(problem.t0), std::fabs(problem.T)});
    if (std::fabs(mesh.t0() - problem.t0) > 4e-16 * scale ||
        std::fabs(mesh.T() - problem.T) > 4e-16 * scale)
        throw SolverError("mesh horizon does not match problem");
}

}  // namespace

std::vector<StateVec> parareal_init(const OdeProblem& problem, const Mesh& mesh,
                                    const CoarseMethod& coarse) {
    check_mesh_matches(problem, mesh);
    std::vector<StateVec> row(mesh.n_intervals() + 1);
    row[0] = problem.x0;
    for (int n = 1; n <= mesh.n_intervals(); ++n)
        row[n] = coarse_propagate(problem, mesh, n, row[n - 1], coarse);
    return row;
}

StateVec interval_defect(const OdeProblem& problem, const Mesh& mesh, int n,
                         const StateVec& u, const CoarseMethod& coarse) {
    return fine_propagate(problem, mesh, n, u) -
           coarse_propagate(problem, mesh, n, u, coarse);
}

std::vector<StateVec> defect_sweep(const OdeProblem& problem, const Mesh& mesh,
                                   const std::vector<StateVec>& row,
                                   const CoarseMethod& coarse, int workers) {
    const int N = mesh.n_intervals();
    if (static_cast<int>(row.size()) != N + 1)
        throw SolverError("row must have N+1 states");
    if (workers < 1) throw SolverError("workers must be >= 1");

    std::vector<StateVec> xi(N);
    bool failed = false;
    std::string failure;

#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(static)
#endif
    for (int n = 1; n <= N; ++n) {
        try {
            xi[n - 1] = interval_defect(problem, mesh, n, row[n - 1], coarse);
        } catch (const std::exception& e) {
            // Exceptions may not cross the parallel region; record and rethrow
            // after the join.
#ifdef _OPENMP
#pragma omp critical(pint_defect_sweep_error)
#endif
            {
                failed = true;
                failure = e.what();
            }
        }
    }

    if (failed) throw SolverError(failure);
    return xi;
}

std::vector<StateVec> defect_sweep_serial(const OdeProblem& problem, const Mesh& mesh,
                                          const std::vector<StateVec>& row,
                                          const CoarseMethod& coarse) {
    const int N = mesh.n_intervals();
    if (static_cast<int>(row.size()) != N + 1)
        throw SolverError("row must have N+1 states");
    std::vector<StateVec> xi(N);
    for (int n = 1; n <= N; ++n)
        xi[n - 1] = interval_defect(problem, mesh, n, row[n - 1], coarse);
    return xi;
}

std::vector<StateVec> parareal_iterate(const OdeProblem& problem, const Mesh& mesh,
                                       const std::vector<StateVec>& prev_row,
                                       const CoarseMethod& coarse, int workers) {
    const std::vector<StateVec> xi = defect_sweep(problem, mesh, prev_row, coarse, workers);

    // Sequential coarse recursion u_n = C_{I_n}(u_{n-1}) + xi_n, all n >= 1.
    std::vector<StateVec> row(prev_row.size());
    row[0] = prev_row[0];
    for (int n = 1; n <= mesh.n_intervals(); ++n)
        row[n] = coarse_propagate(problem, mesh, n, row[n - 1], coarse) + xi[n - 1];
    return row;
}

PararealRun parareal_run(const OdeProblem& problem, const Mesh& mesh,
                         const PararealConfig& cfg) {
    check_mesh_matches(problem, mesh);
    const int N = mesh.n_intervals();
    if (cfg.max_iterations < 0) throw SolverError("K must be >= 0");
    if (cfg.max_iterations > N) throw SolverError("K exceeds N");
    if (cfg.workers < 1) throw SolverError("workers must be >= 1");
    if (cfg.stop_tolerance && !(*cfg.stop_tolerance > 0.0))
        throw SolverError("stop_tolerance must be positive");

    PararealRun run;
    run.reference = serial_fine_solve(problem, mesh);
    run.iterates.push_back(parareal_init(problem, mesh, cfg.coarse));

    for (int k = 1; k <= cfg.max_iterations; ++k) {
        const std::vector<StateVec>& prev = run.iterates.back();
        std::vector<StateVec> next = parareal_iterate(problem, mesh, prev, cfg.coarse,
                                                      cfg.workers);
        const bool converged =
            cfg.stop_tolerance && grid_sup_error(next, prev) <= *cfg.stop_tolerance;
        run.iterates.push_back(std::move(next));
        if (converged) break;
    }
    run.iterations_performed = static_cast<int>(run.iterates.size()) - 1;

    run.errors.resize(run.iterates.size());
    run.sup_errors.resize(run.iterates.size());
    for (std::size_t k = 0; k < run.iterates.size(); ++k) {
        run.errors[k].resize(N + 1);
        double sup = 0.0;
        for (int n = 0; n <= N; ++n) {
            run.errors[k][n] = sup_norm(run.iterates[k][n] - run.reference[n]);
            sup = std::max(sup, run.errors[k][n]);
        }
        run.sup_errors[k] = sup;
    }
    return run;
}

}  // namespace pint
