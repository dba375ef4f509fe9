#ifndef EVMIRROR_QUADRATURE_HPP
#define EVMIRROR_QUADRATURE_HPP

#include <functional>

namespace evmirror {

struct QuadratureResult {
    double value = 0.0;
    double est_abs_error = 0.0;
    int panels = 0;  ///< Gauss-Kronrod panels evaluated in total
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
///
/// The interval with the largest local error estimate is bisected until the
/// combined estimate drops below max(abs_tol, rel_tol * |integral|), the
/// panel budget is exhausted, or further bisection is below floating-point
/// resolution.
QuadratureResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                        double a, double b,
                                        double abs_tol, double rel_tol,
                                        int max_panels = 2000);

}  // namespace evmirror

#endif
