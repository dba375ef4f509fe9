#ifndef EVMIRROR_EXPPARAMS_HPP
#define EVMIRROR_EXPPARAMS_HPP

#include <string>
#include <vector>

namespace evmirror::expparams {

/// SI description of one atom/laser configuration. Plain aggregate; call
/// validate() (done by build_table and the file loader) before trusting a
/// hand-built instance.
struct PhysicalParams {
    double wavelength = 0.0;  ///< laser wavelength, m
    double linewidth = 0.0;   ///< natural linewidth Gamma, rad/s
    double detuning = 0.0;    ///< detuning Delta = omega - omega_atom, rad/s (> 0)
    double rabi = 0.0;        ///< resonant Rabi frequency Omega, rad/s
    double mass = 0.0;        ///< atomic mass, kg
    double kappa = 0.0;       ///< evanescent-field decay rate, 1/m

    void validate() const;  ///< throws DomainError unless all entries are > 0 and finite
};

/// Bundled configuration for the Rb-85 D2 line: lambda = 780 nm,
/// Gamma = 2 pi x 6 MHz, Delta = 5e4 Gamma, kappa^{-1} = 100 nm, and a Rabi
/// frequency of 2 pi x 10.392 GHz chosen to put the saturation at 6e-4.
PhysicalParams rb85_d2_typical();

/// Derived mirror figures in the units the reduced model uses.
struct MirrorReport {
    double saturation_s = 0.0;
    double p_max_over_hbar_kappa = 0.0;
    double tau_refl_in_linewidths = 0.0;  ///< at p_infty = p_max
    double spont_emission_prob = 0.0;     ///< at p_infty = p_max
    bool coherent_ok = false;             ///< saturation below 0.1
    bool adiabatic_ok = false;            ///< detuning >= 10 linewidths
};

/// Saturation parameter s = (Omega^2 / 2) / (Delta^2 + Gamma^2 / 4).
double saturation(const PhysicalParams& params);

/// Maximum reflectible momentum from p_max^2 / 2M = (1/2) hbar Delta s,
/// returned in units of hbar kappa.
double p_max_from_saturation(const PhysicalParams& params);

/// Bounce duration tau = M / (kappa p_infty) in units of 1/Gamma, for an
/// incident momentum given in units of hbar kappa.
double reflection_time_physical(const PhysicalParams& params, double p_infty_red);

/// Inverse of reflection_time_physical: the reduced momentum that produces
/// a given bounce duration (in units of 1/Gamma).
double alpha_from_reflection_time(const PhysicalParams& params, double tau_in_linewidths);

/// Photon-scattering estimate of the spontaneous-emission probability per
/// bounce: rate Gamma s / 2 at the turning-point intensity integrated over
/// the bounce, which for the exponential barrier reduces to
/// (Gamma / Delta) * (p_infty / hbar kappa).
double spont_emission_probability(const PhysicalParams& params, double p_infty_red);

/// All derived rows at once (tau and emission evaluated at p_infty = p_max).
MirrorReport build_table(const PhysicalParams& params);

/// One row of the published-versus-computed comparison.
struct TableComparison {
    std::string quantity;
    double computed;
    double reference;
    double rel_tolerance;
    bool within;
};

/// Computed values side by side with the published typical values for the
/// Rb-85 D2 configuration (6e-4, 150, ~4, 2.5e-3), each at 50% tolerance:
/// the published inputs carry one significant figure.
std::vector<TableComparison> compare_with_reference(const MirrorReport& report);

/// Reads a `name = value unit` parameter file (# starts a comment).
/// Accepted names: wavelength, linewidth, detuning, rabi, mass, and either
/// kappa or decay_length. Frequencies given in Hz/kHz/MHz/GHz are cyclic
/// and multiplied by 2 pi; `rad/s` is taken as is; detuning also accepts
/// the unit `Gamma`. Throws ParseError with the offending line number.
PhysicalParams load_params_file(const std::string& path);

// SI <-> reduced-unit conversions.
double alpha_from_momentum_si(const PhysicalParams& params, double p_si);
double momentum_si_from_alpha(const PhysicalParams& params, double alpha);

}  // namespace evmirror::expparams

#endif
