#include "pint/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pint/bounds.hpp"
#include "pint/parareal.hpp"

namespace pint {

OrderFit fit_order(std::span<const double> h_values, std::span<const double> errors) {
    if (h_values.size() != errors.size())
        throw SolverError("h/error length mismatch in order fit");
    for (std::size_t i = 1; i < h_values.size(); ++i)
        if (!(h_values[i] < h_values[i - 1]))
            throw SolverError("h grid must be strictly decreasing");

    OrderFit fit;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i] < 0.0 || !std::isfinite(errors[i]))
            throw SolverError("errors must be finite and nonnegative");
        if (errors[i] == 0.0) {
            ++fit.excluded_zeros;  // exactness floor; never log-transformed
            continue;
        }
        fit.h_values.push_back(h_values[i]);
        fit.errors.push_back(errors[i]);
    }
    const std::size_t n = fit.h_values.size();
    if (n < 3) throw SolverError("fewer than 3 usable points for order fit");

    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(fit.h_values[i]);
        y[i] = std::log(fit.errors[i]);
    }
    double xb = 0.0, yb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xb += x[i];
        yb += y[i];
    }
    xb /= static_cast<double>(n);
    yb /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xb) * (x[i] - xb);
        sxy += (x[i] - xb) * (y[i] - yb);
        syy += (y[i] - yb) * (y[i] - yb);
    }
    fit.slope = sxy / sxx;
    fit.intercept = yb - fit.slope * xb;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res == 0.0 ? 1.0 : 0.0);
    fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
    return fit;
}

DefectMeasurement measure_defect(const OdeProblem& problem, const Mesh& mesh,
                                 const CoarseMethod& coarse, double alpha) {
    DefectMeasurement d;
    d.alpha = alpha;
    d.h = mesh.h();

    const std::vector<StateVec> row = parareal_init(problem, mesh, coarse);
    d.defects.resize(mesh.n_intervals());
    for (int n = 1; n <= mesh.n_intervals(); ++n) {
        d.defects[n - 1] = sup_norm(interval_defect(problem, mesh, n, row[n - 1], coarse));
        d.max_defect = std::max(d.max_defect, d.defects[n - 1]);
    }
    d.c2 = d.max_defect / std::pow(d.h, 1.0 + alpha);
    return d;
}

namespace {

int intervals_for(const OdeProblem& problem, double h) {
    const double horizon = problem.T - problem.t0;
    const int N = static_cast<int>(std::llround(horizon / h));
    return std::max(N, 1);
}

void check_h_grid(const OdeProblem& problem, std::span<const double> h_grid,
                  std::size_t min_points) {
    if (h_grid.size() < min_points)
        throw SolverError("h grid has too few values");
    for (double h : h_grid)
        if (!(h * problem.lipschitz_L < 1.0))
            throw SolverError("h grid violates h*L < 1");
}

}  // namespace

OrderFit defect_order_study(const OdeProblem& problem, const CoarseMethod& coarse,
                            std::span<const double> h_grid, int m) {
    check_h_grid(problem, h_grid, 4);
    std::vector<double> hs, errs;
    for (double h : h_grid) {
        const Mesh mesh = mesh_for(problem, intervals_for(problem, h), m);
        hs.push_back(mesh.h());
        errs.push_back(measure_defect(problem, mesh, coarse).max_defect);
    }
    return fit_order(hs, errs);
}

namespace {

double grid_error_vs_exact(const std::vector<StateVec>& nodes, const ExactFn& exact,
                           const Mesh& mesh) {
    double err = 0.0;
    for (int n = 0; n <= mesh.n_intervals(); ++n)
        err = std::max(err, sup_norm(nodes[n] - exact(mesh.node(n))));
    return err;
}

}  // namespace

OrderFit fine_order_study(const OdeProblem& problem, const ExactFn& exact,
                          std::span<const double> h_grid, int m) {
    check_h_grid(problem, h_grid, 3);
    std::vector<double> hs, errs;
    for (double h : h_grid) {
        const Mesh mesh = mesh_for(problem, intervals_for(problem, h), m);
        hs.push_back(mesh.h());
        errs.push_back(grid_error_vs_exact(serial_fine_solve(problem, mesh), exact, mesh));
    }
    return fit_order(hs, errs);
}

OrderFit coarse_order_study(const OdeProblem& problem, const ExactFn& exact,
                            std::span<const double> h_grid, const CoarseMethod& coarse) {
    check_h_grid(problem, h_grid, 3);
    std::vector<double> hs, errs;
    for (double h : h_grid) {
        const Mesh mesh = mesh_for(problem, intervals_for(problem, h), 1);
        hs.push_back(mesh.h());
        errs.push_back(
            grid_error_vs_exact(parareal_init(problem, mesh, coarse), exact, mesh));
    }
    return fit_order(hs, errs);
}

StateVec phi1_reference(const OdeProblem& problem, double t, const StateVec& u) {
    const StateVec f0 = problem.rhs(t, u);
    const std::size_t d = u.dim();

    // Jacobian-vector product J(t,u) f0 by a central directional difference.
    StateVec jf = StateVec::zeros(d);
    const double nf = sup_norm(f0);
    if (nf > 0.0) {
        const double delta = 1e-6 * (1.0 + sup_norm(u));
        const double scale = delta / nf;
        const StateVec fp = problem.rhs(t, axpy(scale, f0, u));
        const StateVec fm = problem.rhs(t, axpy(-scale, f0, u));
        jf = (1.0 / (2.0 * scale)) * (fp - fm);
    }

    // df/dt by a central difference; exactly zero for autonomous rhs.
    const double dt = 1e-6 * (1.0 + std::fabs(t));
    const StateVec ft = (1.0 / (2.0 * dt)) * (problem.rhs(t + dt, u) - problem.rhs(t - dt, u));

    return 0.5 * (jf + ft);
}

Phi1ConvergenceReport phi1_convergence_check(const OdeProblem& problem, double t,
                                             const StateVec& u,
                                             std::span<const double> h_grid) {
    if (h_grid.size() < 3) throw SolverError("h grid has too few values");

    Phi1ConvergenceReport rep;
    rep.phi1 = phi1_reference(problem, t, u);
    const StateVec f0 = problem.rhs(t, u);

    for (double h : h_grid) {
        const StateVec inc = rk4_increment(problem, t, u, h);
        const StateVec scaled = (1.0 / h) * (inc - f0);
        rep.h_values.push_back(h);
        rep.deviations.push_back(sup_norm(scaled - rep.phi1));
        rep.scaled_increments.push_back(scaled);
    }

    rep.all_zero = std::all_of(rep.deviations.begin(), rep.deviations.end(),
                               [](double d) { return d == 0.0; });
    if (!rep.all_zero) rep.fit = fit_order(rep.h_values, rep.deviations);
    return rep;
}

ConditionCheckReport lipschitz_condition_check(const OdeProblem& problem,
                                               const Mesh& mesh,
                                               const CoarseMethod& coarse,
                                               int sample_count, std::uint64_t seed,
                                               int workers) {
    if (sample_count < 1) throw SolverError("sample_count must be >= 1");
    if (workers < 1) throw SolverError("workers must be >= 1");
    const double L = problem.lipschitz_L;
    const double h = mesh.h();
    if (coarse.kind == CoarseKind::BackwardEuler && h > 1.0 / (2.0 * L))
        throw SolverError("step too large for backward-Euler constant");

    // Sampling box: coarse-trajectory envelope padded by 1 in each component.
    const std::vector<StateVec> row = parareal_init(problem, mesh, coarse);
    const std::size_t d = problem.x0.dim();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const StateVec& u : row)
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], u[i] - 1.0);
            hi[i] = std::max(hi[i], u[i] + 1.0);
        }

    // Draw all samples up front (serial), so the measured ratios cannot
    // depend on the worker count.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(1, mesh.n_intervals());
    std::vector<SamplePair> samples(sample_count);
    for (SamplePair& s : samples) {
        do {
            std::vector<double> a(d), b(d);
            for (std::size_t i = 0; i < d; ++i) {
                std::uniform_real_distribution<double> dist(lo[i], hi[i]);
                a[i] = dist(rng);
                b[i] = dist(rng);
            }
            s.u1 = StateVec::unchecked(std::move(a));
            s.u2 = StateVec::unchecked(std::move(b));
        } while (sup_norm(s.u1 - s.u2) == 0.0);
        s.interval = pick_n(rng);
    }

    std::vector<double> r1(sample_count), r3(sample_count);
    bool failed = false;
    std::string failure;

#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(static)
#endif
    for (int s = 0; s < sample_count; ++s) {
        try {
            const SamplePair& sp = samples[s];
            const double dist = sup_norm(sp.u1 - sp.u2);
            const StateVec c1 = coarse_propagate(problem, mesh, sp.interval, sp.u1, coarse);
            const StateVec c2 = coarse_propagate(problem, mesh, sp.interval, sp.u2, coarse);
            r1[s] = sup_norm(c1 - c2) / dist;
            const StateVec f1 = fine_propagate(problem, mesh, sp.interval, sp.u1);
            const StateVec f2 = fine_propagate(problem, mesh, sp.interval, sp.u2);
            r3[s] = sup_norm((f1 - c1) - (f2 - c2)) / (h * dist);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical(pint_condition_check_error)
#endif
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) throw SolverError(failure);

    ConditionCheckReport rep;
    rep.samples = sample_count;
    rep.seed = seed;

    // Deterministic reduction: scan in sample order.
    int arg1 = 0, arg3 = 0;
    rep.cond1_max_ratio = rep.cond3_max_ratio = 0.0;
    rep.cond1_min_ratio = rep.cond3_min_ratio = std::numeric_limits<double>::infinity();
    for (int s = 0; s < sample_count; ++s) {
        if (r1[s] > rep.cond1_max_ratio) {
            rep.cond1_max_ratio = r1[s];
            arg1 = s;
        }
        if (r3[s] > rep.cond3_max_ratio) {
            rep.cond3_max_ratio = r3[s];
            arg3 = s;
        }
        rep.cond1_min_ratio = std::min(rep.cond1_min_ratio, r1[s]);
        rep.cond3_min_ratio = std::min(rep.cond3_min_ratio, r3[s]);
    }
    rep.cond1_worst = samples[arg1];
    rep.cond3_worst = samples[arg3];

    const double slack = 1e-10;
    rep.cond1_bound = coarse.kind == CoarseKind::ForwardEuler ? 1.0 + h * L
                                                              : 1.0 + 2.0 * h * L;
    rep.cond1_pass = rep.cond1_max_ratio <= rep.cond1_bound * (1.0 + slack);

    if (coarse.kind == CoarseKind::ForwardEuler) {
        if (mesh.fine_substeps() == 1) {
            rep.cond3_bound = L + rk4_lipschitz_M(L, h);  // c3 = L + M
        } else if (problem.autonomous) {
            // c3~ = c6 + L with c6 = (e^{h M(tau)} - 1)/h
            const double M_tau = rk4_lipschitz_M(L, mesh.tau());
            rep.cond3_bound = std::expm1(h * M_tau) / h + L;
        }
        // nonautonomous with m > 1: measured ratio reported, no assertion
    }
    if (rep.cond3_bound)
        rep.cond3_pass = rep.cond3_max_ratio <= *rep.cond3_bound * (1.0 + slack);
    return rep;
}

}  // namespace pint
