#ifndef EVMIRROR_ORACLE_HPP
#define EVMIRROR_ORACLE_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evmirror/mirror.hpp"

namespace evmirror::oracle {

/// Uniform spatial grid.
struct GridSpec {
    double z_min;
    double z_max;
    int n_points;

    GridSpec(double z_min_, double z_max_, int n_points_);
    double step() const { return (z_max - z_min) / (n_points - 1); }
};

/// Result of fitting A sin(alpha z + phi) to asymptotic samples.
struct PhaseFit {
    double phase;      ///< extracted phase shift, 2 phi, radians
    double amplitude;  ///< fitted amplitude, > 0
    double residual;   ///< rms misfit relative to the amplitude
};

/// First position where the barrier is negligible at the precision floor,
/// p_max e^{-z} < 1e-8 alpha^2. Phase fits should use samples beyond this.
double asymptotic_window_start(const MirrorParams& params);

/// Grid on which numerov_solve resolves the phase shift to ~1e-6:
/// starts deep inside the barrier (u >= max(10 alpha, 25)), ends past the
/// asymptotic window with room for two de Broglie wavelengths, and uses a
/// step min(0.02 / max(alpha, 1), 0.01). Optionally overrides the step.
GridSpec default_grid(const MirrorParams& params,
                      std::optional<double> step_override = std::nullopt);

/// Three-point fourth-order integration of psi'' = g(z) psi over `grid`,
/// from the two seed values at the first two grid points. Returns raw
/// (unscaled) samples.
std::vector<WaveFunctionSample> numerov_integrate(const std::function<double(double)>& g,
                                                  const GridSpec& grid,
                                                  double psi0, double psi1);

/// Finite-difference solution of the barrier problem
///   -psi'' + p_max^2 e^{-2z} psi = alpha^2 psi,
/// integrated outward from deep inside the barrier where the decaying
/// solution dominates. The two innermost points are seeded with the
/// decaying form e^{-u} / sqrt(u), u = p_max e^{-z}; integrating outward
/// keeps contamination by the growing solution suppressed by e^{-2u}.
/// Samples are returned normalized to max |psi| = 1 (the solution is only
/// defined up to scale).
///
/// Throws DomainError if the grid is too coarse (step * alpha >= 0.05), too
/// shallow (u(z_min) < 10 alpha), or so deep that the seed underflows.
std::vector<WaveFunctionSample> numerov_solve(const MirrorParams& params,
                                              const GridSpec& grid);

/// Least-squares fit of A sin(alpha z + phi) over asymptotic samples.
/// Needs at least 8 points spanning one de Broglie wavelength. The
/// returned phase is 2 phi; when `reference` is given the result is moved
/// by multiples of 4 pi onto the reference branch (A > 0 fixes phi only
/// mod 2 pi). Residuals above `residual_tol` throw FitError, which usually
/// means the window still sees the barrier.
PhaseFit extract_phase(std::span<const WaveFunctionSample> samples, double alpha,
                       std::optional<double> reference = std::nullopt,
                       double residual_tol = 1e-6);

/// The classical action integral int_{z0}^{z} p dz', evaluated by adaptive
/// quadrature. The square-root singularity at the turning point is removed
/// by integrating p^2 / (alpha^2 - p^2) dp over momentum instead.
double wkb_action_quadrature(const MirrorParams& params, double z);

}  // namespace evmirror::oracle

#endif
