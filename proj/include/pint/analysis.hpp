#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pint/integrators.hpp"
#include "pint/mesh.hpp"
#include "pint/problem.hpp"

namespace pint {

/// Log-log least-squares fit of error against h; `slope` is the observed
/// convergence order. Zero errors are excluded before fitting and counted in
/// `excluded_zeros`; the stored sequences are the points actually used.
struct OrderFit {
    std::vector<double> h_values;
    std::vector<double> errors;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int excluded_zeros = 0;
};

/// Fits log(error) = slope*log(h) + intercept. Requires h strictly decreasing
/// and at least 3 usable (positive-error) points.
OrderFit fit_order(std::span<const double> h_values, std::span<const double> errors);

struct DefectMeasurement {
    std::vector<double> defects;  // sup_norm(F_{I_n}(u) - C_{I_n}(u)) per interval
    double max_defect = 0.0;
    double c2 = 0.0;  // max defect / h^(1+alpha)
    double alpha = 1.0;
    double h = 0.0;
};

/// Defect magnitudes along the coarse-sweep states (the compact set the
/// paper's Lambda argument lives on), plus the calibrated c2.
DefectMeasurement measure_defect(const OdeProblem& problem, const Mesh& mesh,
                                 const CoarseMethod& coarse, double alpha = 1.0);

/// Max defect per h over an h-grid, fitted order. Expected slope 1 + alpha
/// (= 2 for the Euler/RK4 pair). Each grid value must satisfy h*L < 1;
/// meshes use N = round(horizon/h) and the realized h enters the fit.
OrderFit defect_order_study(const OdeProblem& problem, const CoarseMethod& coarse,
                            std::span<const double> h_grid, int m);

/// Global-error order of the m-substep RK4 fine propagator against an exact
/// solution (grid sup error at the coarse nodes).
OrderFit fine_order_study(const OdeProblem& problem, const ExactFn& exact,
                          std::span<const double> h_grid, int m = 1);

/// Global-error order of a coarse sweep against an exact solution.
OrderFit coarse_order_study(const OdeProblem& problem, const ExactFn& exact,
                            std::span<const double> h_grid, const CoarseMethod& coarse);

/// Leading defect coefficient Phi_1(t,u) = (1/2)(f df/dx + df/dt), computed
/// by central finite differences: the Jacobian-vector product J f via a
/// directional difference with step 1e-6*(1+sup_norm(u)), the time derivative
/// with step 1e-6*(1+|t|).
StateVec phi1_reference(const OdeProblem& problem, double t, const StateVec& u);

struct Phi1ConvergenceReport {
    std::vector<double> h_values;
    std::vector<StateVec> scaled_increments;  // (F4(h,t,u) - f(t,u)) / h per h
    std::vector<double> deviations;           // sup_norm(scaled_increment - phi1)
    StateVec phi1;                            // finite-difference reference
    bool all_zero = false;                    // deviations identically zero (exact case)
    std::optional<OrderFit> fit;              // absent when all_zero
};

/// Verifies (F4(h,t,u;f) - f(t,u))/h -> Phi_1(t,u); the remainder is O(h), so
/// the fitted order of the deviation is expected >= 1.
Phi1ConvergenceReport phi1_convergence_check(const OdeProblem& problem, double t,
                                             const StateVec& u,
                                             std::span<const double> h_grid);

struct SamplePair {
    StateVec u1;
    StateVec u2;
    int interval = 1;
};

struct ConditionCheckReport {
    int samples = 0;
    std::uint64_t seed = 0;

    // condition 1: sup_norm(C(u1)-C(u2)) / sup_norm(u1-u2)
    double cond1_max_ratio = 0.0;
    double cond1_min_ratio = 0.0;
    double cond1_bound = 0.0;  // 1+hL (forward Euler) or 1+2hL (backward Euler)
    bool cond1_pass = false;
    SamplePair cond1_worst;

    // condition 3: sup_norm((F-C)(u1)-(F-C)(u2)) / (h * sup_norm(u1-u2))
    double cond3_max_ratio = 0.0;
    double cond3_min_ratio = 0.0;
    std::optional<double> cond3_bound;  // absent when not asserted
    std::optional<bool> cond3_pass;
    SamplePair cond3_worst;
};

/// Samples `sample_count` state pairs from the box of max-norm radius 1
/// around the coarse trajectory (fixed seed, interval index sampled too) and
/// measures the theorem's Lipschitz-type ratios. Condition 1 is asserted
/// against 1+hL (forward Euler) or 1+2hL (backward Euler, needs h <= 1/(2L));
/// condition 3 against c3 = L+M for m = 1 and against c3~ = c6+L for m > 1
/// on autonomous problems, and is reported without assertion otherwise.
/// Slack is multiplicative 1e-10. Results do not depend on `workers`.
ConditionCheckReport lipschitz_condition_check(const OdeProblem& problem,
                                               const Mesh& mesh,
                                               const CoarseMethod& coarse,
                                               int sample_count, std::uint64_t seed,
                                               int workers = 1);

}  // namespace pint
