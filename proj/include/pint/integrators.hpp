#pragma once

#include <vector>

#include "pint/mesh.hpp"
#include "pint/problem.hpp"
#include "pint/state.hpp"

namespace pint {

enum class CoarseKind { ForwardEuler, BackwardEuler };

/// Coarse propagator selection. The fixed-point settings apply to backward
/// Euler only; the contraction guarantee there needs h*L < 1, which the step
/// routine checks at use time.
struct CoarseMethod {
    CoarseKind kind = CoarseKind::ForwardEuler;
    double fp_tolerance = 1e-14;
    int fp_max_iters = 100;

    static CoarseMethod forward_euler() { return {CoarseKind::ForwardEuler}; }
    static CoarseMethod backward_euler(double tol = 1e-14, int max_iters = 100) {
        return {CoarseKind::BackwardEuler, tol, max_iters};
    }
};

/// One explicit Euler step: u + h*f(t, u).
StateVec euler_step(const OdeProblem& problem, double t, const StateVec& u, double h);

/// Solves z = u + h*f(t_next, z) by fixed-point iteration z_{i+1} = u +
/// h*f(t_next, z_i) starting from z_0 = u. Requires h*L < 1 (contraction);
/// the returned z has residual sup_norm(z - u - h*f(t_next, z)) below
/// cfg.fp_tolerance.
StateVec backward_euler_step(const OdeProblem& problem, double t_next,
                             const StateVec& u, double h, const CoarseMethod& cfg);

/// Four-stage increment F4(h,t,u;f) = (k1 + 2 k2 + 2 k3 + k4)/6 with
///   k1 = f(t, u)
///   k2 = f(t + h/2, u + (h/2) k1)
///   k3 = f(t + h/2, u + (h/2) k2)
///   k4 = f(t + h,   u + h k3)
StateVec rk4_increment(const OdeProblem& problem, double t, const StateVec& u, double h);

/// u + h*F4(h,t,u;f).
StateVec rk4_step(const OdeProblem& problem, double t, const StateVec& u, double h);

/// Coarse propagator over interval I_n: one forward Euler step from t_{n-1}
/// or one backward Euler step targeting t_n, width h.
StateVec coarse_propagate(const OdeProblem& problem, const Mesh& mesh, int n,
                          const StateVec& u, const CoarseMethod& method);

/// Fine propagator over I_n: m consecutive RK4 steps of width tau starting at
/// t_{n-1}.
StateVec fine_propagate(const OdeProblem& problem, const Mesh& mesh, int n,
                        const StateVec& u);

/// Strictly sequential fine solution (u_0, ..., u_N), u_0 = x0,
/// u_n = F_{I_n}(u_{n-1}). This is the reference every parareal error is
/// measured against.
std::vector<StateVec> serial_fine_solve(const OdeProblem& problem, const Mesh& mesh);

}  // namespace pint
