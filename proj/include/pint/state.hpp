#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pint/errors.hpp"

namespace pint {

/// Dense state vector in R^d.
///
/// Checked construction rejects NaN/Inf components; `unchecked` is for values
/// produced by interior arithmetic whose finiteness the caller validates
/// itself (the steppers do, with their own blow-up diagnostics).
class StateVec {
public:
    StateVec() = default;
    StateVec(std::initializer_list<double> values);
    explicit StateVec(std::vector<double> values);

    static StateVec unchecked(std::vector<double> values);
    static StateVec zeros(std::size_t dim);

    std::size_t dim() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }

    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }
    const std::vector<double>& data() const { return c_; }

    bool all_finite() const;

    friend bool operator==(const StateVec&, const StateVec&) = default;

private:
    std::vector<double> c_;
};

StateVec operator+(const StateVec& a, const StateVec& b);
StateVec operator-(const StateVec& a, const StateVec& b);
StateVec operator*(double s, const StateVec& a);

/// y + s*x, the update shape used by every stepper.
StateVec axpy(double s, const StateVec& x, const StateVec& y);

/// Max norm. Every error measurement in this library uses it.
double sup_norm(const StateVec& x);

/// max_n sup_norm(a[n] - b[n]) over two node sequences of equal length.
double grid_sup_error(std::span<const StateVec> a, std::span<const StateVec> b);

/// Throws SolverError(what) if any component of x is NaN or infinite.
void ensure_finite(const StateVec& x, const char* what);

}  // namespace pint
