#include "pint/integrators.hpp"

#include <cmath>

namespace pint {

StateVec euler_step(const OdeProblem& problem, double t, const StateVec& u, double h) {
    if (!(h > 0.0)) throw SolverError("step width must be positive");
    StateVec next = axpy(h, problem.rhs(t, u), u);
    ensure_finite(next, "integration blow-up");
    return next;
}

StateVec backward_euler_step(const OdeProblem& problem, double t_next,
                             const StateVec& u, double h, const CoarseMethod& cfg) {
    if (cfg.kind != CoarseKind::BackwardEuler)
        throw SolverError("coarse method is not backward Euler");
    if (!(h > 0.0)) throw SolverError("step width must be positive");
    if (!(h * problem.lipschitz_L < 1.0)) throw SolverError("contraction violated");

    // z_{i+1} = u + h f(t_next, z_i), z_0 = u. Once successive iterates are
    // within fp_tolerance, the residual of the returned iterate is below
    // h*L*fp_tolerance < fp_tolerance.
    StateVec z = u;
    for (int i = 0; i < cfg.fp_max_iters; ++i) {
        StateVec z_next = axpy(h, problem.rhs(t_next, z), u);
        ensure_finite(z_next, "integration blow-up");
        if (sup_norm(z_next - z) <= cfg.fp_tolerance) return z_next;
        z = z_next;
    }
    throw SolverError("fixed point did not converge");
}

StateVec rk4_increment(const OdeProblem& problem, double t, const StateVec& u, double h) {
    if (!(h > 0.0)) throw SolverError("step width must be positive");
    const double half = h / 2.0;

    const StateVec k1 = problem.rhs(t, u);
    ensure_finite(k1, "integration blow-up");
    const StateVec k2 = problem.rhs(t + half, axpy(half, k1, u));
    ensure_finite(k2, "integration blow-up");
    const StateVec k3 = problem.rhs(t + half, axpy(half, k2, u));
    ensure_finite(k3, "integration blow-up");
    const StateVec k4 = problem.rhs(t + h, axpy(h, k3, u));
    ensure_finite(k4, "integration blow-up");

    std::vector<double> inc(u.dim());
    for (std::size_t i = 0; i < inc.size(); ++i)
        inc[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    return StateVec::unchecked(std::move(inc));
}

StateVec rk4_step(const OdeProblem& problem, double t, const StateVec& u, double h) {
    StateVec next = axpy(h, rk4_increment(problem, t, u, h), u);
    ensure_finite(next, "integration blow-up");
    return next;
}

StateVec coarse_propagate(const OdeProblem& problem, const Mesh& mesh, int n,
                          const StateVec& u, const CoarseMethod& method) {
    if (n < 1 || n > mesh.n_intervals()) throw SolverError("interval index out of range");
    switch (method.kind) {
        case CoarseKind::ForwardEuler:
            return euler_step(problem, mesh.node(n - 1), u, mesh.h());
        case CoarseKind::BackwardEuler:
            return backward_euler_step(problem, mesh.node(n), u, mesh.h(), method);
    }
    throw SolverError("unknown coarse method");
}

StateVec fine_propagate(const OdeProblem& problem, const Mesh& mesh, int n,
                        const StateVec& u) {
    if (n < 1 || n > mesh.n_intervals()) throw SolverError("interval index out of range");
    StateVec v = u;
    for (int j = 0; j < mesh.fine_substeps(); ++j)
        v = rk4_step(problem, mesh.subnode(n, j), v, mesh.tau());
    return v;
}

std::vector<StateVec> serial_fine_solve(const OdeProblem& problem, const Mesh& mesh) {
    std::vector<StateVec> u(mesh.n_intervals() + 1);
    u[0] = problem.x0;
    for (int n = 1; n <= mesh.n_intervals(); ++n)
        u[n] = fine_propagate(problem, mesh, n, u[n - 1]);
    return u;
}

}  // namespace pint
