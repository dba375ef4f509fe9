#include "evmirror/mirror.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "evmirror/errors.hpp"
#include "evmirror/specfun.hpp"

namespace evmirror {
namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kSmallAlphaLimit = 0.2;
constexpr double kMaxWaveFunctionAlpha = 200.0;

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

// ln cosh(x) without overflow: |x| + ln(1 + e^{-2|x|}) - ln 2.
double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - M_LN2;
}

// The closed-form expressions continue smoothly past the reflecting window
// alpha < p_max, so the raw overloads only require well-defined inputs.
void check_phase_args(double alpha, double p_max) {
    if (!std::isfinite(alpha) || !std::isfinite(p_max)) {
        throw DomainError("alpha and p_max must be finite");
    }
    if (alpha < 0.0) throw DomainError("alpha must be >= 0");
    if (p_max <= 0.0) throw DomainError("p_max must be > 0");
}

}  // namespace

MirrorParams::MirrorParams(double alpha_, double p_max_) : alpha(alpha_), p_max(p_max_) {
    if (!std::isfinite(alpha) || !std::isfinite(p_max)) {
        throw DomainError("MirrorParams requires finite alpha and p_max");
    }
    if (!(alpha > 0.0) || !(alpha < p_max)) {
        throw DomainError("MirrorParams requires 0 < alpha < p_max (got alpha=" +
                          fmt(alpha) + ", p_max=" + fmt(p_max) + ")");
    }
}

MirrorParams MirrorParams::extended(double alpha, double p_max) {
    if (!std::isfinite(alpha) || !std::isfinite(p_max) || alpha <= 0.0 || p_max <= 0.0) {
        throw DomainError("MirrorParams::extended requires positive finite values");
    }
    return MirrorParams(alpha, p_max, Unchecked{});
}

double turning_point(const MirrorParams& params) {
    return std::log(params.p_max / params.alpha);
}

double turning_point(double alpha, double p_max) {
    check_phase_args(alpha, p_max);
    if (alpha == 0.0) throw DomainError("turning point requires alpha > 0");
    return std::log(p_max / alpha);
}

double classical_mirror_position(double alpha, double p_max) {
    return turning_point(alpha, p_max) - M_LN2;
}

double reflection_time(const MirrorParams& params) {
    return 1.0 / params.alpha;
}

double classical_trajectory(const MirrorParams& params, double t) {
    return turning_point(params) + log_cosh(t * params.alpha);
}

double classical_mirror_position(const MirrorParams& params) {
    return turning_point(params) - M_LN2;
}

double classical_momentum(const MirrorParams& params, double z) {
    const double z0 = turning_point(params);
    if (z < z0) {
        throw DomainError("z = " + fmt(z) + " is inside the classically forbidden region (z0 = " +
                          fmt(z0) + ")");
    }
    const double p2 = params.alpha * params.alpha -
                      params.p_max * params.p_max * std::exp(-2.0 * z);
    // p2 can round slightly negative right at the turning point.
    return std::sqrt(std::max(p2, 0.0));
}

double wkb_action(const MirrorParams& params, double z) {
    const double z0 = turning_point(params);
    if (z < z0) {
        throw DomainError("action integral requires z >= z0 = " + fmt(z0));
    }
    if (z == z0) return 0.0;
    // v = alpha^2 - p^2 taken straight from the exponential, which keeps
    // artanh(p/alpha) = (1/2) ln((alpha+p)^2 / v) accurate when p ~ alpha.
    const double v = params.p_max * params.p_max * std::exp(-2.0 * z);
    const double p = std::sqrt(std::max(params.alpha * params.alpha - v, 0.0));
    if (v == 0.0) {
        throw DomainError("z = " + fmt(z) + " is beyond the range of the action form "
                          "(barrier underflows)");
    }
    const double artanh = 0.5 * std::log((params.alpha + p) * (params.alpha + p) / v);
    return params.alpha * artanh - p;
}

WaveFunctionSample wkb_wavefunction(const MirrorParams& params, double z) {
    const double z0 = turning_point(params);
    if (z <= z0) {
        throw DomainError("WKB wave function requires z > z0 = " + fmt(z0));
    }
    const double p = classical_momentum(params, z);
    return {z, std::sqrt(4.0 / p) * std::sin(M_PI / 4.0 + wkb_action(params, z))};
}

double wkb_phase_shift(double alpha, double p_max) {
    check_phase_args(alpha, p_max);
    if (alpha == 0.0) return M_PI / 2.0;
    return M_PI / 2.0 - 2.0 * alpha * (1.0 + std::log(p_max / (2.0 * alpha)));
}

double wkb_phase_shift(const MirrorParams& params) {
    return wkb_phase_shift(params.alpha, params.p_max);
}

EffectiveMirror wkb_effective_mirror(const MirrorParams& params) {
    return {M_PI / 2.0, classical_mirror_position(params) + 1.0};
}

WaveFunctionSample schr_wavefunction(const MirrorParams& params, double z) {
    if (!std::isfinite(z)) throw DomainError("z must be finite");
    if (params.alpha > kMaxWaveFunctionAlpha) {
        throw DomainError("wave-function prefactor overflows for alpha > " +
                          fmt(kMaxWaveFunctionAlpha));
    }
    const double u = params.p_max * std::exp(-z);
    const double prefactor = std::sqrt(4.0 / M_PI * std::sinh(M_PI * params.alpha));
    if (u == 0.0) {
        // z so large that u underflows; the wave is sin(alpha z + phase).
        return {z, std::sqrt(4.0 / params.alpha) *
                       std::sin(params.alpha * z + 0.5 * schr_phase_shift(params))};
    }
    const auto k = specfun::bessel_k_imag_order(params.alpha, u);
    return {z, prefactor * k.value};
}

double schr_phase_shift(double alpha, double p_max) {
    check_phase_args(alpha, p_max);
    if (alpha == 0.0) return 0.0;
    return -2.0 * alpha * std::log(p_max / 2.0) + 2.0 * specfun::arg_gamma_1i(alpha);
}

double schr_phase_shift(const MirrorParams& params) {
    return schr_phase_shift(params.alpha, params.p_max);
}

EffectiveMirror schr_effective_mirror_small_alpha(const MirrorParams& params) {
    if (params.alpha > kSmallAlphaLimit) {
        throw ApplicabilityError("quantum-regime mirror formula requires alpha <= " +
                                 fmt(kSmallAlphaLimit) + " (got " + fmt(params.alpha) + ")");
    }
    return {0.0, std::log(params.p_max / 2.0) + kEulerGamma};
}

double wavepacket_mirror_position(double alpha, double p_max) {
    check_phase_args(alpha, p_max);
    return std::log(p_max / 2.0) - specfun::re_digamma_1i(alpha);
}

double wavepacket_mirror_position(const MirrorParams& params) {
    return wavepacket_mirror_position(params.alpha, params.p_max);
}

}  // namespace evmirror
