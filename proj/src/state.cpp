#include "pint/state.hpp"

#include <cmath>
#include <utility>

namespace pint {

namespace {

void check_same_dim(const StateVec& a, const StateVec& b) {
    if (a.dim() != b.dim()) throw SolverError("state dimension mismatch");
}

}  // namespace

StateVec::StateVec(std::initializer_list<double> values)
    : StateVec(std::vector<double>(values)) {}

StateVec::StateVec(std::vector<double> values) : c_(std::move(values)) {
    if (c_.empty()) throw SolverError("state dimension must be >= 1");
    if (!all_finite()) throw SolverError("non-finite state");
}

StateVec StateVec::unchecked(std::vector<double> values) {
    StateVec v;
    v.c_ = std::move(values);
    return v;
}

StateVec StateVec::zeros(std::size_t dim) {
    return unchecked(std::vector<double>(dim, 0.0));
}

bool StateVec::all_finite() const {
    for (double x : c_) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

StateVec operator+(const StateVec& a, const StateVec& b) {
    check_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return StateVec::unchecked(std::move(out));
}

StateVec operator-(const StateVec& a, const StateVec& b) {
    check_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return StateVec::unchecked(std::move(out));
}

StateVec operator*(double s, const StateVec& a) {
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a[i];
    return StateVec::unchecked(std::move(out));
}

StateVec axpy(double s, const StateVec& x, const StateVec& y) {
    check_same_dim(x, y);
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[i] + s * x[i];
    return StateVec::unchecked(std::move(out));
}

double sup_norm(const StateVec& x) {
    double m = 0.0;
    for (double c : x) {
        if (!std::isfinite(c)) throw SolverError("non-finite state");
        m = std::max(m, std::fabs(c));
    }
    return m;
}

double grid_sup_error(std::span<const StateVec> a, std::span<const StateVec> b) {
    if (a.size() != b.size()) throw SolverError("grid length mismatch");
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, sup_norm(a[n] - b[n]));
    return m;
}

void ensure_finite(const StateVec& x, const char* what) {
    if (!x.all_finite()) throw SolverError(what);
}

}  // namespace pint
