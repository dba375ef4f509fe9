#include "evmirror/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "evmirror/errors.hpp"
#include "evmirror/quadrature.hpp"

namespace evmirror::oracle {
namespace {

constexpr double kResolutionGuard = 0.05;  // require step * alpha below this
constexpr double kMinSeedDepth = 10.0;     // require u(z_min) >= 10 alpha
constexpr double kSeedUnderflow = 690.0;   // e^{-u} underflows past this

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

GridSpec::GridSpec(double z_min_, double z_max_, int n_points_)
    : z_min(z_min_), z_max(z_max_), n_points(n_points_) {
    if (!std::isfinite(z_min) || !std::isfinite(z_max) || z_min >= z_max) {
        throw DomainError("GridSpec requires finite z_min < z_max");
    }
    if (n_points < 3) {
        throw DomainError("GridSpec requires at least 3 points");
    }
}

double asymptotic_window_start(const MirrorParams& params) {
    return std::log(params.p_max * 1e8 / (params.alpha * params.alpha));
}

GridSpec default_grid(const MirrorParams& params, std::optional<double> step_override) {
    const double u_seed = std::max(kMinSeedDepth * params.alpha, 25.0);
    if (u_seed > kSeedUnderflow) {
        throw DomainError("alpha too large for a safely seeded solve (needs u = " +
                          fmt(u_seed) + " inside the barrier)");
    }
    const double z_min = std::log(params.p_max / u_seed);
    const double window = std::max(2.0 * (2.0 * M_PI / params.alpha), 6.0);
    const double z_max = asymptotic_window_start(params) + window;
    const double h =
        step_override.value_or(std::min(0.02 / std::max(params.alpha, 1.0), 0.01));
    const int n = static_cast<int>(std::ceil((z_max - z_min) / h)) + 1;
    return GridSpec(z_min, z_min + h * (n - 1), n);
}

std::vector<WaveFunctionSample> numerov_integrate(const std::function<double(double)>& g,
                                                  const GridSpec& grid,
                                                  double psi0, double psi1) {
    const int n = grid.n_points;
    const double h = grid.step();
    const double h2_12 = h * h / 12.0;

    std::vector<WaveFunctionSample> out(n);
    std::vector<double> gv(n);
    for (int i = 0; i < n; ++i) {
        out[i].z = grid.z_min + h * i;
        gv[i] = g(out[i].z);
    }
    out[0].psi = psi0;
    out[1].psi = psi1;

    double w_prev = psi0 * (1.0 - h2_12 * gv[0]);
    double w_curr = psi1 * (1.0 - h2_12 * gv[1]);
    for (int i = 1; i + 1 < n; ++i) {
        const double w_next = 2.0 * w_curr - w_prev + h * h * gv[i] * out[i].psi;
        out[i + 1].psi = w_next / (1.0 - h2_12 * gv[i + 1]);
        w_prev = w_curr;
        w_curr = w_next;
    }
    return out;
}

std::vector<WaveFunctionSample> numerov_solve(const MirrorParams& params,
                                              const GridSpec& grid) {
    const double h = grid.step();
    if (h * params.alpha >= kResolutionGuard) {
        throw DomainError("grid too coarse: step * alpha = " + fmt(h * params.alpha) +
                          " must stay below " + fmt(kResolutionGuard));
    }
    const double u0 = params.p_max * std::exp(-grid.z_min);
    // The 1e-9 slack absorbs exp/log round-trip noise when a caller places
    // z_min exactly on the depth boundary.
    if (u0 < kMinSeedDepth * params.alpha * (1.0 - 1e-9)) {
        throw DomainError("z_min too shallow: need p_max e^{-z_min} >= 10 alpha, i.e. z_min <= " +
                          fmt(std::log(params.p_max / (kMinSeedDepth * params.alpha))));
    }
    if (u0 > kSeedUnderflow) {
        throw DomainError("seed underflow: z_min too deep, choose z_min >= " +
                          fmt(std::log(params.p_max / kSeedUnderflow)));
    }

    const double u1 = params.p_max * std::exp(-(grid.z_min + h));
    // Seeds are the decaying form e^{-u}/sqrt(u), rescaled by e^{+u0} so the
    // run starts at O(1) instead of the underflow floor.
    const double psi0 = 1.0 / std::sqrt(u0);
    const double psi1 = std::exp(u0 - u1) / std::sqrt(u1);

    const double alpha2 = params.alpha * params.alpha;
    const double pmax2 = params.p_max * params.p_max;
    auto g = [alpha2, pmax2](double z) { return pmax2 * std::exp(-2.0 * z) - alpha2; };

    std::vector<WaveFunctionSample> samples = numerov_integrate(g, grid, psi0, psi1);

    double peak = 0.0;
    for (const auto& s : samples) peak = std::max(peak, std::abs(s.psi));
    if (!(peak > 0.0) || !std::isfinite(peak)) {
        throw AccuracyError("integration produced a degenerate solution");
    }
    for (auto& s : samples) s.psi /= peak;
    return samples;
}

PhaseFit extract_phase(std::span<const WaveFunctionSample> samples, double alpha,
                       std::optional<double> reference, double residual_tol) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("extract_phase requires alpha > 0");
    }
    if (samples.size() < 8) {
        throw DomainError("extract_phase needs at least 8 samples");
    }
    const double span_z = samples.back().z - samples.front().z;
    const double wavelength = 2.0 * M_PI / alpha;
    if (span_z < wavelength * (1.0 - 1e-9)) {
        throw DomainError("samples span " + fmt(span_z) +
                          " but at least one de Broglie wavelength (" + fmt(wavelength) +
                          ") is required");
    }

    // Linear least squares on psi = B sin(alpha z) + C cos(alpha z).
    double sbb = 0, sbc = 0, scc = 0, rb = 0, rc = 0;
    for (const auto& s : samples) {
        const double sn = std::sin(alpha * s.z);
        const double cs = std::cos(alpha * s.z);
        sbb += sn * sn;
        sbc += sn * cs;
        scc += cs * cs;
        rb += sn * s.psi;
        rc += cs * s.psi;
    }
    const double det = sbb * scc - sbc * sbc;
    if (!(std::abs(det) > 0.0)) {
        throw FitError("degenerate sine fit (samples do not resolve the oscillation)");
    }
    const double b = (scc * rb - sbc * rc) / det;
    const double c = (sbb * rc - sbc * rb) / det;
    const double amplitude = std::hypot(b, c);
    if (!(amplitude > 0.0)) {
        throw FitError("zero-amplitude fit");
    }

    double ss = 0.0;
    for (const auto& s : samples) {
        const double model = b * std::sin(alpha * s.z) + c * std::cos(alpha * s.z);
        ss += (s.psi - model) * (s.psi - model);
    }
    const double residual = std::sqrt(ss / static_cast<double>(samples.size())) / amplitude;
    if (residual > residual_tol) {
        throw FitError("fit residual " + fmt(residual) + " exceeds tolerance " +
                       fmt(residual_tol) + " (is the window fully asymptotic?)");
    }

    // A > 0 pins phi mod 2 pi, so the phase shift 2 phi is known mod 4 pi;
    // a reference value selects the branch.
    double phase = 2.0 * std::atan2(c, b);
    if (reference) {
        phase += 4.0 * M_PI * std::round((*reference - phase) / (4.0 * M_PI));
    }
    return {phase, amplitude, residual};
}

double wkb_action_quadrature(const MirrorParams& params, double z) {
    const double z0 = turning_point(params);
    if (z < z0) {
        throw DomainError("action integral requires z >= z0 = " + fmt(z0));
    }
    if (z == z0) return 0.0;

    // Momentum as the integration variable removes the square-root
    // singularity at the turning point:
    //   int_{z0}^{z} p dz' = int_0^{p1} p^2 / (alpha^2 - p^2) dp.
    // One more change of variable, to the energy deficit w = alpha^2 - p^2,
    // lets the lower limit be the exactly known barrier value
    // w(z) = p_max^2 e^{-2z} instead of a catastrophically rounded
    // alpha^2 - p1^2:
    //   ... = int_{w(z)}^{alpha^2} sqrt(alpha^2 - w) / (2 w) dw.
    const double alpha2 = params.alpha * params.alpha;
    const double w_lo = params.p_max * params.p_max * std::exp(-2.0 * z);
    const auto integrand = [alpha2](double w) {
        return std::sqrt(std::max(alpha2 - w, 0.0)) / (2.0 * w);
    };
    QuadratureResult q =
        adaptive_gauss_kronrod(integrand, w_lo, alpha2, 1e-12, 1e-11, 4000);
    if (!q.converged) {
        throw AccuracyError("action quadrature did not converge (estimate " +
                            fmt(q.value) + ", error " + fmt(q.est_abs_error) + ")");
    }
    return q.value;
}

}  // namespace evmirror::oracle
