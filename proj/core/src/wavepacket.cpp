#include "evmirror/wavepacket.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "evmirror/errors.hpp"
#include "evmirror/mirror.hpp"

namespace evmirror::wavepacket {
namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    return acc;
}

// Per-component phase pieces that do not depend on z.
std::vector<double> z_free_phases(const MomentumSpectrum& spectrum, double t,
                                  bool reflected,
                                  const std::function<double(double)>& phase) {
    std::vector<double> theta0(spectrum.p.size());
    for (std::size_t i = 0; i < theta0.size(); ++i) {
        const double p = spectrum.p[i];
        theta0[i] = -0.5 * p * p * t + (reflected ? phase(p) : 0.0);
    }
    return theta0;
}

std::complex<double> amplitude_at(const MomentumSpectrum& spectrum,
                                  std::span<const double> theta0, double z,
                                  bool reflected) {
    const double z_sign = reflected ? 1.0 : -1.0;
    std::complex<double> psi{0.0, 0.0};
    for (std::size_t i = 0; i < spectrum.p.size(); ++i) {
        psi += spectrum.amplitude[i] *
               std::polar(1.0, theta0[i] + z_sign * spectrum.p[i] * z);
    }
    psi *= spectrum.p.size() > 1 ? spectrum.dp() : 1.0;
    return reflected ? -psi : psi;
}

PacketSnapshot synthesize(const MomentumSpectrum& spectrum,
                          std::span<const double> z_grid, double t,
                          bool reflected,
                          const std::function<double(double)>& phase) {
    if (z_grid.size() < 2) throw DomainError("z grid needs at least 2 points");
    const std::size_t np = spectrum.p.size();
    if (np == 0) throw DomainError("empty momentum spectrum");
    const double dp = np > 1 ? spectrum.dp() : 1.0;

    const std::vector<double> theta0 = z_free_phases(spectrum, t, reflected, phase);

    PacketSnapshot snap;
    snap.t = t;
    snap.z_grid.assign(z_grid.begin(), z_grid.end());
    snap.density.resize(z_grid.size());

    for (std::size_t j = 0; j < z_grid.size(); ++j) {
        snap.density[j] = std::norm(amplitude_at(spectrum, theta0, z_grid[j], reflected));
    }

    // The continuum norm of the synthesized packet is 2 pi times the
    // spectral weight; a deficit means probability left the grid.
    double weight = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        weight += spectrum.amplitude[i] * spectrum.amplitude[i];
    }
    weight *= dp;
    snap.raw_norm = trapezoid(snap.z_grid, snap.density);
    const double expected = 2.0 * M_PI * weight;
    if (std::abs(snap.raw_norm / expected - 1.0) > 1e-6) {
        throw CoverageError("packet support leaves the grid at t = " + fmt(t) +
                            " (captured " + fmt(snap.raw_norm / expected) +
                            " of the norm)");
    }

    std::vector<double> z_density(z_grid.size());
    for (std::size_t j = 0; j < z_grid.size(); ++j) {
        z_density[j] = snap.z_grid[j] * snap.density[j];
    }
    snap.centroid = trapezoid(snap.z_grid, z_density) / snap.raw_norm;
    for (auto& d : snap.density) d /= snap.raw_norm;
    return snap;
}

struct LineFit {
    double intercept;
    double slope;
    double r_squared;
};

LineFit fit_line(std::span<const PacketSnapshot> snaps) {
    const std::size_t n = snaps.size();
    if (n < 2) throw DomainError("centroid fit needs at least 2 snapshots");
    double st = 0, sz = 0, stt = 0, stz = 0;
    for (const auto& s : snaps) {
        st += s.t;
        sz += s.centroid;
        stt += s.t * s.t;
        stz += s.t * s.centroid;
    }
    const double den = n * stt - st * st;
    if (!(std::abs(den) > 0.0)) throw DomainError("snapshot times are degenerate");
    const double slope = (n * stz - st * sz) / den;
    const double intercept = (sz - slope * st) / n;

    const double mean_z = sz / n;
    double ss_res = 0, ss_tot = 0;
    for (const auto& s : snaps) {
        const double model = intercept + slope * s.t;
        ss_res += (s.centroid - model) * (s.centroid - model);
        ss_tot += (s.centroid - mean_z) * (s.centroid - mean_z);
    }
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    return {intercept, slope, r2};
}

}  // namespace

PacketSpec::PacketSpec(double p_bar_, double sigma_p_, double p_max_)
    : p_bar(p_bar_), sigma_p(sigma_p_), p_max(p_max_) {
    if (!std::isfinite(p_bar) || !std::isfinite(sigma_p) || !std::isfinite(p_max) ||
        p_bar <= 0.0 || sigma_p <= 0.0 || p_max <= 0.0) {
        throw DomainError("PacketSpec requires positive finite parameters");
    }
    if (sigma_p > p_bar / 5.0) {
        throw DomainError("PacketSpec requires sigma_p <= p_bar / 5 (got sigma_p=" +
                          fmt(sigma_p) + ", p_bar=" + fmt(p_bar) + ")");
    }
    if (p_bar + 5.0 * sigma_p >= p_max) {
        throw DomainError("PacketSpec requires p_bar + 5 sigma_p < p_max; spectral "
                          "weight would leak past the reflecting window");
    }
}

MomentumSpectrum gaussian_spectrum(const PacketSpec& spec, int n_nodes) {
    if (n_nodes < 512) {
        throw DomainError("gaussian_spectrum requires at least 512 nodes");
    }
    const double lo = std::max(spec.p_bar - 6.0 * spec.sigma_p, 1e-6 * spec.p_bar);
    const double hi = std::min(spec.p_bar + 6.0 * spec.sigma_p,
                               spec.p_max * (1.0 - 1e-12));

    MomentumSpectrum out;
    out.p_max = spec.p_max;
    out.weight_outside = 0.0;  // nodes are clipped to the window
    out.p.resize(n_nodes);
    out.amplitude.resize(n_nodes);
    const double dp = (hi - lo) / (n_nodes - 1);
    double weight = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        const double p = lo + dp * i;
        const double a = std::exp(-(p - spec.p_bar) * (p - spec.p_bar) /
                                  (4.0 * spec.sigma_p * spec.sigma_p));
        out.p[i] = p;
        out.amplitude[i] = a;
        weight += a * a;
    }
    weight *= dp;
    const double scale = 1.0 / std::sqrt(weight);
    for (auto& a : out.amplitude) a *= scale;
    return out;
}

PacketSnapshot synthesize_incident(const MomentumSpectrum& spectrum,
                                   std::span<const double> z_grid, double t) {
    return synthesize(spectrum, z_grid, t, false, {});
}

PacketSnapshot synthesize_reflected(const MomentumSpectrum& spectrum,
                                    std::span<const double> z_grid, double t,
                                    const std::function<double(double)>& phase) {
    return synthesize(spectrum, z_grid, t, true, phase);
}

std::complex<double> packet_amplitude(const MomentumSpectrum& spectrum, double z,
                                      double t, bool reflected,
                                      const std::function<double(double)>& phase) {
    std::function<double(double)> eff = phase;
    if (reflected && !eff) {
        const double p_max = spectrum.p_max;
        eff = [p_max](double p) { return schr_phase_shift(p, p_max); };
    }
    const std::vector<double> theta0 = z_free_phases(spectrum, t, reflected, eff);
    return amplitude_at(spectrum, theta0, z, reflected);
}

PacketSnapshot synthesize_reflected(const MomentumSpectrum& spectrum,
                                    std::span<const double> z_grid, double t) {
    const double p_max = spectrum.p_max;
    return synthesize(spectrum, z_grid, t, true,
                      [p_max](double p) { return schr_phase_shift(p, p_max); });
}

double effective_mirror_from_delay(std::span<const PacketSnapshot> incident,
                                   std::span<const PacketSnapshot> reflected) {
    const LineFit in = fit_line(incident);
    const LineFit out = fit_line(reflected);
    if (in.r_squared < 0.999) {
        throw RegimeError("incident centroid track is not linear (R^2 = " +
                          fmt(in.r_squared) + "); packet not asymptotic");
    }
    if (out.r_squared < 0.999) {
        throw RegimeError("reflected centroid track is not linear (R^2 = " +
                          fmt(out.r_squared) + "); packet not asymptotic");
    }
    // Incoming line z = b_in - v t, outgoing z = b_out + v t; they meet at
    // height (b_in + b_out) / 2, the effective mirror position.
    return 0.5 * (in.intercept + out.intercept);
}

double spatial_sigma(const PacketSpec& spec, double t) {
    const double s0 = 1.0 / (2.0 * spec.sigma_p);
    return std::hypot(s0, spec.sigma_p * t);
}

DelayMeasurement measure_mirror_position(const PacketSpec& spec, int n_times,
                                         int n_z, int n_p,
                                         const std::function<double(double)>& phase) {
    if (n_times < 2) throw DomainError("measure_mirror_position needs n_times >= 2");
    const MirrorParams params(spec.p_bar, spec.p_max);
    const double z0 = turning_point(params);
    const double zeta_ref = wavepacket_mirror_position(params);

    // Centroid stations: clear of the barrier, one packet width apart.
    const double sigma_z0 = spatial_sigma(spec, 0.0);
    const double c0 = z0 + 5.0 + 6.0 * sigma_z0;
    const double dc = std::max(2.0, sigma_z0);

    std::vector<double> stations(n_times);
    for (int k = 0; k < n_times; ++k) stations[k] = c0 + dc * k;
    const double t_max = stations.back() / spec.p_bar;

    // One shared grid wide enough for the most dispersed snapshot on either
    // branch (reflected centroids sit 2 zeta away from the stations).
    const double sigma_max = spatial_sigma(spec, t_max);
    const double margin = 7.0 * sigma_max + 2.0 * std::abs(zeta_ref) + 2.0;
    const std::vector<double> grid =
        linear_grid(stations.front() - margin, stations.back() + margin, n_z);

    const MomentumSpectrum spectrum = gaussian_spectrum(spec, n_p);

    DelayMeasurement m;
    m.zeta_analytic = zeta_ref;
    for (double c : stations) {
        const double t = c / spec.p_bar;
        m.incident.push_back(synthesize_incident(spectrum, grid, -t));
        m.reflected.push_back(phase ? synthesize_reflected(spectrum, grid, t, phase)
                                    : synthesize_reflected(spectrum, grid, t));
    }
    m.zeta_fitted = effective_mirror_from_delay(m.incident, m.reflected);
    return m;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (!(lo < hi) || n < 2) throw DomainError("linear_grid requires lo < hi and n >= 2");
    std::vector<double> g(n);
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo + h * i;
    return g;
}

}  // namespace evmirror::wavepacket
