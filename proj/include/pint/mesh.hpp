#pragma once

namespace pint {

struct OdeProblem;

/// Uniform coarse grid t_n = t0 + n*h on [t0, T] with h = (T - t0)/N, each
/// interval I_n = [t_{n-1}, t_n] refined into m fine substeps of width
/// tau = h/m. Immutable after construction.
class Mesh {
public:
    Mesh(double t0, double T, int n_intervals, int fine_substeps);

    double t0() const { return t0_; }
    double T() const { return T_; }
    double horizon() const { return T_ - t0_; }
    double h() const { return h_; }
    double tau() const { return tau_; }
    int n_intervals() const { return n_intervals_; }
    int fine_substeps() const { return fine_substeps_; }

    /// Coarse node t_n = t0 + n*h, 0 <= n <= N.
    double node(int n) const;

    /// Fine subnode t_{n,j} = t_{n-1} + j*tau within interval n,
    /// 1 <= n <= N, 0 <= j <= m.
    double subnode(int n, int j) const;

private:
    double t0_;
    double T_;
    double h_;
    double tau_;
    int n_intervals_;
    int fine_substeps_;
};

/// Mesh over the problem's own horizon.
Mesh mesh_for(const OdeProblem& problem, int n_intervals, int fine_substeps);

}  // namespace pint
