#include "wva/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "wva/errors.hpp"

namespace wva::quad {

Integral integrate(const std::function<double(double)>& f, double a, double b,
                   std::span<const double> breakpoints, double rel_tol, double abs_tol) {
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    Integral total{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double error = 0.0;
        double l1 = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, cuts[i], cuts[i + 1], 15, rel_tol, &error, &l1);
        total.value += v;
        total.error += error;
        total.l1 += l1;
    }
    if (!std::isfinite(total.value) || !std::isfinite(total.error)) {
        throw NumericalError("quadrature produced a non-finite value");
    }
    // The adaptive rule stops at max depth without throwing; check its own estimate.
    if (total.error > std::max(10.0 * rel_tol * total.l1, abs_tol) + 1e-300) {
        throw NumericalError("quadrature did not converge: error estimate " + fmt::format("{:.3e}", total.error) +
                             " against scale " + fmt::format("{:.3e}", total.l1));
    }
    return total;
}

}  // namespace wva::quad
