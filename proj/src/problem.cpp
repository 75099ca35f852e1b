#include "pint/problem.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace pint {

OdeProblem make_problem(RhsFn rhs, double t0, double T, StateVec x0,
                        double lipschitz_L, bool autonomous) {
    if (!rhs) throw SolverError("rhs must be set");
    if (!(T > t0)) throw SolverError("horizon must satisfy T > t0");
    if (!(lipschitz_L > 0.0)) throw SolverError("lipschitz_L must be positive");

    StateVec probe = rhs(t0, x0);
    if (probe.dim() != x0.dim())
        throw SolverError("rhs output dimension does not match x0");

    if (autonomous) {
        // A declared-autonomous rhs must ignore its time argument; probe two
        // times at a few states near x0.
        const double t_mid = t0 + 0.5 * (T - t0);
        for (double shift : {0.0, 1.0, -0.5}) {
            std::vector<double> s(x0.begin(), x0.end());
            for (double& c : s) c += shift;
            StateVec x = StateVec::unchecked(std::move(s));
            if (!(rhs(t0, x) == rhs(t_mid, x)))
                throw SolverError("rhs declared autonomous but depends on t");
        }
    }

    return OdeProblem{std::move(rhs), t0, T, std::move(x0), lipschitz_L, autonomous};
}

const std::vector<std::string>& builtin_problem_names() {
    static const std::vector<std::string> names = {
        "linear-scalar", "linear-decay", "nonautonomous", "zero-rhs"};
    return names;
}

namespace {

[[noreturn]] void unknown_problem(std::string_view name) {
    std::ostringstream msg;
    msg << "unknown problem '" << name << "'; catalog:";
    for (const auto& n : builtin_problem_names()) msg << " " << n;
    throw SolverError(msg.str());
}

}  // namespace

OdeProblem builtin_problem(std::string_view name) {
    if (name == "linear-scalar") {
        return make_problem(
            [](double, const StateVec& x) { return x; },
            0.0, 1.0, StateVec{1.0}, 1.0, true);
    }
    if (name == "linear-decay") {
        return make_problem(
            [](double, const StateVec& x) { return -1.0 * x; },
            0.0, 1.0, StateVec{1.0}, 1.0, true);
    }
    if (name == "nonautonomous") {
        return make_problem(
            [](double t, const StateVec& x) {
                return StateVec::unchecked({x[0] + std::sin(t)});
            },
            0.0, 1.0, StateVec{0.0}, 1.0, false);
    }
    if (name == "zero-rhs") {
        return make_problem(
            [](double, const StateVec& x) { return StateVec::zeros(x.dim()); },
            0.0, 1.0, StateVec{1.0}, 1.0, true);
    }
    unknown_problem(name);
}

ExactFn builtin_exact_solution(std::string_view name) {
    if (name == "linear-scalar")
        return [](double t) { return StateVec::unchecked({std::exp(t)}); };
    if (name == "linear-decay")
        return [](double t) { return StateVec::unchecked({std::exp(-t)}); };
    if (name == "nonautonomous")
        // x' = x + sin t, x(0) = 0  =>  x(t) = (e^t - sin t - cos t)/2
        return [](double t) {
            return StateVec::unchecked({(std::exp(t) - std::sin(t) - std::cos(t)) / 2.0});
        };
    if (name == "zero-rhs")
        return [](double) { return StateVec{1.0}; };
    unknown_problem(name);
}

}  // namespace pint
