#include "pint/mesh.hpp"

#include <cmath>

#include "pint/errors.hpp"
#include "pint/problem.hpp"

namespace pint {

namespace {

double ulp_of(double x) {
    const double ax = std::fabs(x);
    return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

}  // namespace

Mesh::Mesh(double t0, double T, int n_intervals, int fine_substeps)
    : t0_(t0), T_(T), n_intervals_(n_intervals), fine_substeps_(fine_substeps) {
    if (!(T > t0)) throw SolverError("mesh horizon must satisfy T > t0");
    if (n_intervals < 1) throw SolverError("n_intervals must be >= 1");
    if (fine_substeps < 1) throw SolverError("fine_substeps must be >= 1");

    h_ = (T - t0) / n_intervals;
    tau_ = h_ / fine_substeps;
    if (!(h_ > 0.0) || !(tau_ > 0.0)) throw SolverError("degenerate mesh spacing");

    if (std::fabs(node(n_intervals_) - T_) > 4.0 * ulp_of(T_))
        throw SolverError("mesh endpoint drifts from T beyond 4 ulps");
}

double Mesh::node(int n) const {
    if (n < 0 || n > n_intervals_) throw SolverError("node index out of range");
    return t0_ + n * h_;
}

double Mesh::subnode(int n, int j) const {
    if (n < 1 || n > n_intervals_) throw SolverError("interval index out of range");
    if (j < 0 || j > fine_substeps_) throw SolverError("substep index out of range");
    return node(n - 1) + j * tau_;
}

Mesh mesh_for(const OdeProblem& problem, int n_intervals, int fine_substeps) {
    return Mesh(problem.t0, problem.T, n_intervals, fine_substeps);
}

}  // namespace pint
