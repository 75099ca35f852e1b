#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pint/state.hpp"

namespace pint {

using RhsFn = std::function<StateVec(double t, const StateVec& x)>;
using ExactFn = std::function<StateVec(double t)>;

/// Initial value problem x'(t) = f(t, x) on [t0, T] with x(t0) = x0.
///
/// `lipschitz_L` bounds the state sensitivity of f (sup-norm) and feeds every
/// constant of the convergence bounds; it is supplied per problem, never
/// estimated. `rhs` must be a pure function: immutable after construction and
/// safe to evaluate concurrently.
struct OdeProblem {
    RhsFn rhs;
    double t0 = 0.0;
    double T = 1.0;
    StateVec x0;
    double lipschitz_L = 1.0;
    bool autonomous = true;
};

/// Validating factory: checks T > t0, L > 0, that rhs output matches the x0
/// dimension, and probes a declared-autonomous rhs at two times over a few
/// sampled states.
OdeProblem make_problem(RhsFn rhs, double t0, double T, StateVec x0,
                        double lipschitz_L, bool autonomous);

/// Built-in test problems: "linear-scalar" (x'=x), "linear-decay" (x'=-x),
/// "nonautonomous" (x'=x+sin t), "zero-rhs" (x'=0). All on [0,1] with L=1.
/// Unknown names raise an error listing the catalog.
OdeProblem builtin_problem(std::string_view name);

/// Exact solution of a catalog problem (all four have one).
ExactFn builtin_exact_solution(std::string_view name);

const std::vector<std::string>& builtin_problem_names();

}  // namespace pint
