#include "pint/bounds.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace pint {

namespace {

// Integer power by repeated multiplication. Keeps exact scaling under
// power-of-two changes of the base, which the homogeneity tests rely on.
double powi(double base, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= base;
    return p;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw SolverError(std::string(what) + " must be positive and finite");
}

}  // namespace

double rk4_lipschitz_M(double L, double h) {
    if (!(L > 0.0)) throw SolverError("L must be positive");
    if (h < 0.0) throw SolverError("h must be nonnegative");
    const double hL = h * L;
    return L * (1.0 + 0.5 * hL + hL * hL / 6.0 + hL * hL * hL / 24.0);
}

BoundConstants forward_euler_constants(double L, double h, double horizon,
                                       double c2, double alpha) {
    check_positive(L, "L");
    check_positive(h, "h");
    check_positive(horizon, "horizon");
    check_positive(alpha, "alpha");
    if (c2 < 0.0) throw SolverError("c2 must be nonnegative");

    BoundConstants c;
    c.alpha = alpha;
    c.c1 = L;
    c.c2 = c2;
    c.M = rk4_lipschitz_M(L, h);
    c.c3 = L + c.M;
    c.h = h;
    c.horizon = horizon;
    c.b = 1.0 + h * c.c1;
    c.a = h * c.c3;
    c.gamma = std::pow(h, 1.0 + alpha) * c2;
    return c;
}

BoundConstants backward_euler_constants(double L, double h, double horizon,
                                        double c_tilde2, double alpha) {
    check_positive(L, "L");
    check_positive(h, "h");
    check_positive(horizon, "horizon");
    check_positive(alpha, "alpha");
    if (c_tilde2 < 0.0) throw SolverError("c2 must be nonnegative");
    if (h > 1.0 / (2.0 * L))
        throw SolverError("step too large for backward-Euler constant");

    BoundConstants c;
    c.alpha = alpha;
    c.c1 = 2.0 * L;
    c.c2 = c_tilde2;
    c.c_tilde2 = c_tilde2;
    c.M = rk4_lipschitz_M(L, h);
    c.c3 = 0.0;  // hypothesis 3 dropped; no a-coefficient
    c.h = h;
    c.horizon = horizon;
    c.b = 1.0 + 2.0 * h * L;
    c.a = 0.0;
    c.gamma = std::pow(h, 1.0 + alpha) * c_tilde2;
    return c;
}

std::vector<std::vector<double>> z_triangle(const BoundConstants& c, int N, int K) {
    if (N < 1) throw SolverError("N must be >= 1");
    if (K < 0) throw SolverError("K must be >= 0");
    std::vector<std::vector<double>> z(K + 1, std::vector<double>(N + 1, 0.0));
    for (int n = 1; n <= N; ++n) z[0][n] = c.b * z[0][n - 1] + c.gamma;
    for (int k = 1; k <= K; ++k)
        for (int n = 1; n <= N; ++n)
            z[k][n] = c.b * z[k][n - 1] + c.a * z[k - 1][n - 1];
    return z;
}

double z_closed_form(const BoundConstants& c, int n, int k) {
    if (k < 0) throw SolverError("k must be >= 0");
    if (n < 0) throw SolverError("n must be >= 0");
    if (n <= k) return 0.0;  // C(n, k+1) has an empty product for n < k+1

    // binomial in the product form n(n-1)...(n-k) / (k+1)!
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) binom *= static_cast<double>(n - i);
    binom /= factorial(k + 1);

    return c.gamma * powi(c.a, k) * powi(c.b, n - k - 1) * binom;
}

double theorem1_bound(const BoundConstants& c, int k) {
    if (k < 0) throw SolverError("k must be >= 0");
    return std::pow(c.h, c.alpha) * c.c2 * powi(c.c3, k) * powi(c.horizon, k + 1) *
           std::exp(c.c1 * c.horizon) / factorial(k + 1);
}

double theorem2_bound(const BoundConstants& c) {
    check_positive(c.c1, "c1");
    return 2.0 * std::pow(c.h, c.alpha) * std::exp(c.horizon * c.c1) * c.c2 / c.c1;
}

namespace {

void note_worst(DominanceReport& rep, double lhs, double rhs, double tol,
                int n, int k, const char* check) {
    const double ratio = rhs > 0.0 ? lhs / rhs
                                   : (lhs > 0.0 ? std::numeric_limits<double>::infinity()
                                                : 0.0);
    if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_n = n;
        rep.worst_k = k;
        rep.worst_check = check;
    }
    if (!(lhs <= rhs * (1.0 + tol))) rep.all_pass = false;
}

bool dominates(double lhs, double rhs, double tol) {
    return lhs <= rhs * (1.0 + tol);
}

}  // namespace

DominanceReport verify_dominance(const PararealRun& run, const BoundConstants& c,
                                 double tol) {
    const int K = run.iterations_performed;
    const int N = static_cast<int>(run.reference.size()) - 1;
    if (static_cast<int>(run.errors.size()) != K + 1 ||
        static_cast<int>(run.sup_errors.size()) != K + 1)
        throw SolverError("run error matrix shape mismatch");
    for (const auto& rowk : run.errors)
        if (static_cast<int>(rowk.size()) != N + 1)
            throw SolverError("run error matrix shape mismatch");
    // Constants and run must describe the same mesh.
    if (std::fabs(c.horizon / c.h - static_cast<double>(N)) > 0.5)
        throw SolverError("constants do not match run shape");

    const auto z = z_triangle(c, N, K);

    DominanceReport rep;
    rep.tolerance = tol;
    rep.error_vs_z.assign(K + 1, std::vector<bool>(N + 1, true));
    rep.z_vs_closed.assign(K + 1, std::vector<bool>(N + 1, true));
    rep.sup_vs_theorem1.assign(K + 1, true);

    for (int k = 0; k <= K; ++k) {
        for (int n = 0; n <= N; ++n) {
            const double E = run.errors[k][n];
            const double zv = z[k][n];
            const double cf = z_closed_form(c, n, k);
            rep.error_vs_z[k][n] = dominates(E, zv, tol);
            rep.z_vs_closed[k][n] = dominates(zv, cf, tol);
            note_worst(rep, E, zv, tol, n, k, "error_vs_z");
            note_worst(rep, zv, cf, tol, n, k, "z_vs_closed");
        }
        const double bound = theorem1_bound(c, k);
        rep.sup_vs_theorem1[k] = dominates(run.sup_errors[k], bound, tol);
        note_worst(rep, run.sup_errors[k], bound, tol, -1, k, "sup_vs_theorem1");
    }
    return rep;
}

Theorem2Report verify_theorem2(const PararealRun& run, const BoundConstants& c,
                               double tol) {
    Theorem2Report rep;
    rep.bound = theorem2_bound(c);
    rep.pass.resize(run.sup_errors.size());
    for (std::size_t k = 0; k < run.sup_errors.size(); ++k) {
        rep.pass[k] = dominates(run.sup_errors[k], rep.bound, tol);
        if (!rep.pass[k]) rep.all_pass = false;
        const double ratio = rep.bound > 0.0 ? run.sup_errors[k] / rep.bound
                                             : (run.sup_errors[k] > 0.0 ? 1e300 : 0.0);
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_k = static_cast<int>(k);
        }
    }
    return rep;
}

}  // namespace pint
