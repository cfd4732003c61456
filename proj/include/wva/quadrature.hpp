#pragma once

#include <functional>
#include <span>

namespace wva::quad {

struct Integral {
    double value;
    double error;  ///< absolute error estimate, summed over panels
    double l1;     ///< ∫|f|, the scale the relative tolerance refers to
};

/// Adaptive Gauss–Kronrod over [a, b], split at any breakpoints that fall inside.
/// Throws NumericalError when the estimate is non-finite or misses both `rel_tol`
/// and `abs_tol`.
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   std::span<const double> breakpoints = {}, double rel_tol = 1e-10, double abs_tol = 0.0);

}  // namespace wva::quad
