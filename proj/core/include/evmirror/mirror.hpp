#ifndef EVMIRROR_MIRROR_HPP
#define EVMIRROR_MIRROR_HPP

namespace evmirror {

// Everything here works in the natural units of the exponential barrier
// V(z) = p_max^2 exp(-2 z) / 2 with hbar = kappa = M = 1: lengths in 1/kappa,
// momenta in hbar*kappa, time in M/(hbar kappa^2). The physics then depends
// only on the reduced incident momentum alpha and the reduced barrier height
// p_max. SI conversions live in expparams.

/// Reduced description of one barrier/atom configuration.
struct MirrorParams {
    double alpha;  ///< incident momentum, units hbar*kappa
    double p_max;  ///< maximum reflectible momentum, units hbar*kappa

    /// Validates 0 < alpha < p_max (the reflection condition) and finiteness.
    MirrorParams(double alpha_, double p_max_);

    /// Model continuation past the reflecting window: the exponential wall
    /// grows without bound, so the mathematics (exact solution, phase
    /// shift, solver) stays valid for any alpha > 0 even though for
    /// alpha >= p_max the turning point sits at or behind the physical
    /// mirror plane z = 0 and a real atom would strike the surface.
    /// Requires only positive finite values.
    static MirrorParams extended(double alpha, double p_max);

  private:
    struct Unchecked {};
    MirrorParams(double alpha_, double p_max_, Unchecked)
        : alpha(alpha_), p_max(p_max_) {}
};

/// An instantaneous-reflection equivalent: a hard wall at `zeta` that
/// imprints the phase `delta_phi` on the reflected wave.
struct EffectiveMirror {
    double delta_phi;  ///< radians, reported in [0, 2 pi)
    double zeta;       ///< units 1/kappa
};

/// One (position, amplitude) sample of a stationary wave function, with the
/// flux normalization sqrt(4 M / p) and M = 1.
struct WaveFunctionSample {
    double z;
    double psi;
};

// Alongside the MirrorParams operations, the closed-form quantities carry
// raw (alpha, p_max) overloads. These extend smoothly past the reflecting
// window alpha < p_max (where the formulas remain well defined even though
// no reflection takes place) and, where the limit exists, accept alpha = 0.
// Momentum sweeps use them.

/// Classical turning point z0 = ln(p_max / alpha); positive under the
/// reflection condition.
double turning_point(const MirrorParams& params);
double turning_point(double alpha, double p_max);

/// Duration scale of the bounce, 1/alpha in natural units.
double reflection_time(const MirrorParams& params);

/// Classical bounce trajectory z(t) = z0 + ln cosh(t / tau). Symmetric in t
/// and safe against overflow up to |t / tau| ~ 1e300.
double classical_trajectory(const MirrorParams& params, double t);

/// Intersection of the incoming and outgoing free asymptotes,
/// zeta_cl = z0 - ln 2.
double classical_mirror_position(const MirrorParams& params);
double classical_mirror_position(double alpha, double p_max);

/// Local classical momentum p(z) = sqrt(alpha^2 - p_max^2 e^{-2z}).
/// Throws DomainError for z below the turning point.
double classical_momentum(const MirrorParams& params, double z);

/// Classical action integral from the turning point,
///   S(z) = alpha (artanh(p/alpha) - p/alpha),
/// evaluated in the cancellation-free form artanh(p/alpha) =
/// (1/2) ln((alpha + p)^2 / (p_max^2 e^{-2z})), which stays accurate far
/// beyond the turning point where p rounds to alpha. Zero at z = z0.
double wkb_action(const MirrorParams& params, double z);

/// Semiclassical wave function in the allowed region z > z0,
///   psi = sqrt(4 / p(z)) sin(pi/4 + S(z)).
/// Diverges at the turning point; z <= z0 throws DomainError.
WaveFunctionSample wkb_wavefunction(const MirrorParams& params, double z);

/// Semiclassical reflection phase shift, referenced to a hard wall at the
/// origin: pi/2 - 2 alpha (1 + ln(p_max / (2 alpha))). Unwrapped (may be any
/// real number).
double wkb_phase_shift(const MirrorParams& params);
/// Same, allowing alpha = 0 where the limit pi/2 is returned.
double wkb_phase_shift(double alpha, double p_max);

/// The WKB effective mirror: delta_phi = pi/2, zeta = zeta_cl + 1.
EffectiveMirror wkb_effective_mirror(const MirrorParams& params);

/// Exact stationary wave function of the exponential barrier,
///   psi(z) = sqrt(4 sinh(pi alpha) / pi) K_{i alpha}(p_max e^{-z}),
/// real for all z, valid on both sides of the turning point.
WaveFunctionSample schr_wavefunction(const MirrorParams& params, double z);

/// Exact reflection phase shift
///   -2 alpha ln(p_max / 2) + 2 arg Gamma(1 + i alpha),
/// unwrapped; tends to 0 as alpha -> 0.
double schr_phase_shift(const MirrorParams& params);
/// Same, allowing alpha = 0 where the limit 0 is returned.
double schr_phase_shift(double alpha, double p_max);

/// Quantum-regime effective mirror, valid for alpha <= 0.2 (throws
/// ApplicabilityError beyond): delta_phi = 0, zeta = ln(p_max / 2) + gamma.
EffectiveMirror schr_effective_mirror_small_alpha(const MirrorParams& params);

/// Effective mirror position seen by a reflected wave packet,
///   zeta_wp = ln(p_max / 2) - Re digamma(1 + i alpha),
/// equal to -(1/2) d(schr_phase_shift)/d(alpha).
double wavepacket_mirror_position(const MirrorParams& params);
/// Same, allowing alpha = 0 where the limit ln(p_max/2) + gamma is returned.
double wavepacket_mirror_position(double alpha, double p_max);

}  // namespace evmirror

#endif
