#ifndef EVMIRROR_WAVEPACKET_HPP
#define EVMIRROR_WAVEPACKET_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace evmirror::wavepacket {

/// Gaussian momentum spectrum of an incident packet, in the same reduced
/// units as MirrorParams (momenta in hbar*kappa, hbar = M = 1).
struct PacketSpec {
    double p_bar;    ///< mean momentum, > 0
    double sigma_p;  ///< momentum standard deviation
    double p_max;    ///< barrier parameter shared with MirrorParams

    /// Validates sigma_p <= p_bar / 5 and p_bar + 5 sigma_p < p_max, which
    /// keeps the spectral weight inside the reflecting window (0, p_max).
    PacketSpec(double p_bar_, double sigma_p_, double p_max_);
};

/// Discretized momentum spectrum: real amplitudes a_i on uniform nodes p_i
/// with sum a_i^2 dp = 1. Nodes are clipped to (0, p_max), so the weight
/// outside the reflecting window is zero by construction.
struct MomentumSpectrum {
    std::vector<double> p;
    std::vector<double> amplitude;
    double p_max = 0.0;
    double weight_outside = 0.0;  ///< spectral weight beyond (0, p_max)

    double dp() const { return p.size() > 1 ? p[1] - p[0] : 0.0; }
};

/// One time slice of a synthesized packet. `density` is |psi|^2 normalized
/// to unit integral over the grid; `raw_norm` keeps the unnormalized value
/// (2 pi times the spectral weight when the grid covers the packet).
struct PacketSnapshot {
    double t;
    std::vector<double> z_grid;
    std::vector<double> density;
    double centroid = 0.0;
    double raw_norm = 0.0;
};

/// Samples the Gaussian spectrum on >= 512 uniform nodes covering
/// p_bar +- 6 sigma_p (clipped to the reflecting window) and normalizes.
MomentumSpectrum gaussian_spectrum(const PacketSpec& spec, int n_nodes = 1024);

/// Free incident packet psi(z, t) = int dp a(p) e^{-i p^2 t / 2 - i p z}.
/// Its centroid moves as -p_bar t. Throws CoverageError when the grid
/// captures less than (1 - 1e-6) of the packet norm.
PacketSnapshot synthesize_incident(const MomentumSpectrum& spectrum,
                                   std::span<const double> z_grid, double t);

/// Reflected packet
///   psi(z, t) = -int dp a(p) e^{-i p^2 t / 2 + i p z + i dphi(p)},
/// with the per-component reflection phase dphi(p) supplied by `phase`.
PacketSnapshot synthesize_reflected(const MomentumSpectrum& spectrum,
                                    std::span<const double> z_grid, double t,
                                    const std::function<double(double)>& phase);

/// Same, with the exact barrier phase shift for the spectrum's p_max.
PacketSnapshot synthesize_reflected(const MomentumSpectrum& spectrum,
                                    std::span<const double> z_grid, double t);

/// Complex packet amplitude at a single point, including the overall minus
/// sign of the reflected wave. `phase` is ignored for the incident packet.
std::complex<double> packet_amplitude(const MomentumSpectrum& spectrum, double z,
                                      double t, bool reflected,
                                      const std::function<double(double)>& phase = {});

/// Fits straight lines z = b + v t to the incident and reflected centroid
/// tracks and returns the effective mirror position, the height at which
/// the two lines intersect. Tracks whose linear fit has R^2 below 0.999
/// throw RegimeError (the packet was not asymptotic).
double effective_mirror_from_delay(std::span<const PacketSnapshot> incident,
                                   std::span<const PacketSnapshot> reflected);

/// Spatial standard deviation of the free packet at time t,
/// sqrt(1/(4 sigma_p^2) + sigma_p^2 t^2). Handy for sizing grids.
double spatial_sigma(const PacketSpec& spec, double t);

/// A complete delay measurement: centroid tracks on both sides of the
/// bounce plus the fitted and closed-form mirror positions.
struct DelayMeasurement {
    std::vector<PacketSnapshot> incident;   ///< sampled at t < 0
    std::vector<PacketSnapshot> reflected;  ///< sampled at t > 0
    double zeta_fitted = 0.0;
    double zeta_analytic = 0.0;
};

/// Synthesizes incident/reflected snapshot tracks on automatically sized
/// grids and fits the effective mirror position from their centroids.
/// `phase` overrides the per-component reflection phase (tests inject
/// synthetic mirrors this way); by default the exact barrier phase is used.
DelayMeasurement measure_mirror_position(const PacketSpec& spec,
                                         int n_times = 5, int n_z = 2048,
                                         int n_p = 1024,
                                         const std::function<double(double)>& phase = {});

/// Uniform grid helper.
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace evmirror::wavepacket

#endif
