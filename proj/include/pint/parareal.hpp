#pragma once

#include <optional>
#include <vector>

#include "pint/integrators.hpp"
#include "pint/mesh.hpp"
#include "pint/problem.hpp"
#include "pint/state.hpp"

namespace pint {

struct PararealConfig {
    CoarseMethod coarse;
    int max_iterations = 0;  // K; must satisfy K <= N
    std::optional<double> stop_tolerance;  // early stop on sup distance between successive rows
    int workers = 1;
};

/// Full record of a parareal solve: the iterate triangle u_n^(k), the serial
/// fine reference, and the error history against it. Immutable once returned.
struct PararealRun {
    std::vector<std::vector<StateVec>> iterates;  // [k][n], k = 0..iterations_performed
    std::vector<StateVec> reference;              // serial fine solution
    std::vector<std::vector<double>> errors;      // E_n^(k) = sup_norm(u_n^(k) - u_n)
    std::vector<double> sup_errors;               // max over n per iteration
    int iterations_performed = 0;
};

/// Iteration-0 row: sequential coarse sweep from x0.
std::vector<StateVec> parareal_init(const OdeProblem& problem, const Mesh& mesh,
                                    const CoarseMethod& coarse);

/// Per-interval defect at state u: F_{I_n}(u) - C_{I_n}(u).
StateVec interval_defect(const OdeProblem& problem, const Mesh& mesh, int n,
                         const StateVec& u, const CoarseMethod& coarse);

/// Defects (xi_1, ..., xi_N) with xi_n evaluated at row[n-1]. The entries are
/// independent; this is the parallel sweep. The result does not depend on
/// `workers`.
std::vector<StateVec> defect_sweep(const OdeProblem& problem, const Mesh& mesh,
                                   const std::vector<StateVec>& row,
                                   const CoarseMethod& coarse, int workers);

/// Reference implementation of the sweep: same arithmetic, plain loop. Kept
/// for the determinism tests and the benchmark.
std::vector<StateVec> defect_sweep_serial(const OdeProblem& problem, const Mesh& mesh,
                                          const std::vector<StateVec>& row,
                                          const CoarseMethod& coarse);

/// One parareal update: parallel defect sweep on prev_row, then the
/// sequential coarse recursion u_n = C_{I_n}(u_{n-1}) + xi_n, applied for all
/// n >= 1. (The recursion also reproduces the copy rows for n < k; that is
/// asserted by tests, not special-cased here.)
std::vector<StateVec> parareal_iterate(const OdeProblem& problem, const Mesh& mesh,
                                       const std::vector<StateVec>& prev_row,
                                       const CoarseMethod& coarse, int workers);

/// Initialization plus up to K iterations with optional early stop; fills the
/// error triangle against the serial fine reference.
PararealRun parareal_run(const OdeProblem& problem, const Mesh& mesh,
                         const PararealConfig& cfg);

}  // namespace pint
