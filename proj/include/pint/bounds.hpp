#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pint/parareal.hpp"

namespace pint {

/// Every constant of the convergence theorems and their application to the
/// Euler/RK4 pair, plus the derived recurrence coefficients
///   b = 1 + h*c1,   a = h*c3,   gamma = h^(1+alpha)*c2.
///
/// For backward Euler (the hypothesis-3-free theorem) there is no a/c3; both
/// are stored as zero and the z/closed-form machinery is not applicable.
struct BoundConstants {
    double alpha = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double h = 0.0;
    double horizon = 0.0;

    double b = 0.0;
    double a = 0.0;
    double gamma = 0.0;

    double M = 0.0;  // Lipschitz constant of the RK4 increment map

    std::optional<double> c_tilde2;
    std::optional<double> c_tilde3;
    std::optional<double> lambda_cap;    // Lambda, bound of Phi_1 on the sampling tube
    std::optional<double> lambda_tilde;  // m-substep defect constant
    std::optional<double> c4, c5, c6;    // existence constants, calibrated only
};

/// M = L*(1 + (1/2) h L + (1/6) h^2 L^2 + (1/24) h^3 L^3), the Lipschitz
/// constant of F4(h, t, .) when f has Lipschitz constant L.
double rk4_lipschitz_M(double L, double h);

/// Forward-Euler coarse constants: c1 = L, c3 = L + M(L,h), alpha as given,
/// c2 calibrated (or user-supplied).
BoundConstants forward_euler_constants(double L, double h, double horizon,
                                       double c2, double alpha = 1.0);

/// Backward-Euler coarse constants: c1 = 2L, b = 1 + 2hL, c2 = c_tilde2.
/// Valid for h <= 1/(2L); larger steps are rejected.
BoundConstants backward_euler_constants(double L, double h, double horizon,
                                        double c_tilde2, double alpha = 1.0);

/// Majorant triangle by direct recursion:
///   z_0^(k) = 0,  z_n^(0) = b z_{n-1}^(0) + gamma,
///   z_n^(k) = b z_{n-1}^(k) + a z_{n-1}^(k-1).
/// Returns (K+1) x (N+1) rows indexed [k][n].
std::vector<std::vector<double>> z_triangle(const BoundConstants& c, int N, int K);

/// The extracted-coefficient expression gamma * a^k * b^(n-k-1) * C(n, k+1)
/// with the binomial evaluated in the product form n(n-1)...(n-k)/(k+1)!.
/// Zero for n <= k. This upper-bounds z_triangle; it is not equal to it for
/// b > 1 (the extraction step majorizes 1/(1-zeta) by 1/(1-b*zeta)).
double z_closed_form(const BoundConstants& c, int n, int k);

/// Uniform-in-n bound for iteration k:
///   h^alpha * c2 * c3^k * (T-t0)^(k+1) * e^(c1 (T-t0)) / (k+1)!
double theorem1_bound(const BoundConstants& c, int k);

/// The k-independent bound 2 h^alpha e^((T-t0) c1) c2 / c1 of the
/// hypothesis-3-free theorem (backward-Euler application).
double theorem2_bound(const BoundConstants& c);

struct DominanceReport {
    // [k][n] booleans for E_n^(k) <= z_n^(k)*(1+tol) and z <= closed*(1+tol).
    std::vector<std::vector<bool>> error_vs_z;
    std::vector<std::vector<bool>> z_vs_closed;
    // per-k booleans for sup_n E_n^(k) <= theorem1_bound(k)*(1+tol)
    std::vector<bool> sup_vs_theorem1;

    bool all_pass = true;
    // worst observed lhs/rhs over all checks (rhs > 0); > 1+tol means failure
    double worst_ratio = 0.0;
    int worst_n = -1;
    int worst_k = -1;
    std::string worst_check;
    double tolerance = 0.0;
};

/// Checks the proof's inequality chain E <= z <= closed form, and the final
/// theorem-1 bound, against a measured run. Multiplicative tolerance `tol`
/// absorbs floating-point accumulation.
DominanceReport verify_dominance(const PararealRun& run, const BoundConstants& c,
                                 double tol = 1e-9);

struct Theorem2Report {
    double bound = 0.0;
    std::vector<bool> pass;  // per iteration k
    bool all_pass = true;
    double worst_ratio = 0.0;
    int worst_k = -1;
};

/// Checks sup_n E_n^(k) <= theorem2_bound for every recorded iteration.
Theorem2Report verify_theorem2(const PararealRun& run, const BoundConstants& c,
                               double tol = 1e-9);

}  // namespace pint
