#include "evmirror/expparams.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "evmirror/errors.hpp"

namespace evmirror::expparams {
namespace {

constexpr double kHbar = 1.054571817e-34;         // J s
constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
constexpr double kTwoPi = 2.0 * M_PI;

constexpr double kCoherentSaturationLimit = 0.1;
constexpr double kAdiabaticDetuningRatio = 10.0;

// Published typical values the bundled Rb-85 configuration is compared
// against. Their inputs are one significant figure, hence the wide bars.
constexpr double kRefSaturation = 6e-4;
constexpr double kRefPmax = 150.0;
constexpr double kRefTauLinewidths = 4.0;
constexpr double kRefSpontEmission = 2.5e-3;
constexpr double kRefRelTolerance = 0.5;

}  // namespace

void PhysicalParams::validate() const {
    const struct {
        const char* name;
        double value;
    } entries[] = {{"wavelength", wavelength}, {"linewidth", linewidth},
                   {"detuning", detuning},     {"rabi", rabi},
                   {"mass", mass},             {"kappa", kappa}};
    for (const auto& e : entries) {
        if (!std::isfinite(e.value) || e.value <= 0.0) {
            throw DomainError(std::string("PhysicalParams.") + e.name +
                              " must be positive and finite");
        }
    }
}

PhysicalParams rb85_d2_typical() {
    PhysicalParams p;
    p.wavelength = 780e-9;
    p.linewidth = kTwoPi * 6e6;
    p.detuning = 5e4 * p.linewidth;
    p.rabi = kTwoPi * 10.392e9;
    p.mass = 84.911789732 * kAtomicMassUnit;
    p.kappa = 1e7;  // decay length 100 nm
    return p;
}

double saturation(const PhysicalParams& params) {
    const double omega2 = params.rabi * params.rabi;
    return 0.5 * omega2 /
           (params.detuning * params.detuning + 0.25 * params.linewidth * params.linewidth);
}

double p_max_from_saturation(const PhysicalParams& params) {
    const double s = saturation(params);
    const double p_max_si = std::sqrt(params.mass * kHbar * params.detuning * s);
    return p_max_si / (kHbar * params.kappa);
}

double reflection_time_physical(const PhysicalParams& params, double p_infty_red) {
    if (!(p_infty_red > 0.0) || !std::isfinite(p_infty_red)) {
        throw DomainError("reflection_time_physical requires p_infty > 0");
    }
    const double tau = params.mass / (kHbar * params.kappa * params.kappa * p_infty_red);
    return tau * params.linewidth;
}

double alpha_from_reflection_time(const PhysicalParams& params, double tau_in_linewidths) {
    if (!(tau_in_linewidths > 0.0) || !std::isfinite(tau_in_linewidths)) {
        throw DomainError("alpha_from_reflection_time requires tau > 0");
    }
    const double tau = tau_in_linewidths / params.linewidth;
    return params.mass / (kHbar * params.kappa * params.kappa * tau);
}

double spont_emission_probability(const PhysicalParams& params, double p_infty_red) {
    if (!(p_infty_red > 0.0) || !std::isfinite(p_infty_red)) {
        throw DomainError("spont_emission_probability requires p_infty > 0");
    }
    return params.linewidth / params.detuning * p_infty_red;
}

MirrorReport build_table(const PhysicalParams& params) {
    params.validate();
    MirrorReport report;
    report.saturation_s = saturation(params);
    report.p_max_over_hbar_kappa = p_max_from_saturation(params);
    report.tau_refl_in_linewidths =
        reflection_time_physical(params, report.p_max_over_hbar_kappa);
    report.spont_emission_prob =
        spont_emission_probability(params, report.p_max_over_hbar_kappa);
    report.coherent_ok = report.saturation_s < kCoherentSaturationLimit;
    report.adiabatic_ok = params.detuning >= kAdiabaticDetuningRatio * params.linewidth;
    return report;
}

std::vector<TableComparison> compare_with_reference(const MirrorReport& report) {
    const auto row = [](std::string name, double computed, double reference) {
        const bool ok = std::abs(computed - reference) <= kRefRelTolerance * reference;
        return TableComparison{std::move(name), computed, reference, kRefRelTolerance, ok};
    };
    return {
        row("saturation", report.saturation_s, kRefSaturation),
        row("p_max_over_hbar_kappa", report.p_max_over_hbar_kappa, kRefPmax),
        row("tau_refl_in_linewidths", report.tau_refl_in_linewidths, kRefTauLinewidths),
        row("spont_emission_prob", report.spont_emission_prob, kRefSpontEmission),
    };
}

double alpha_from_momentum_si(const PhysicalParams& params, double p_si) {
    return p_si / (kHbar * params.kappa);
}

double momentum_si_from_alpha(const PhysicalParams& params, double alpha) {
    return alpha * kHbar * params.kappa;
}

namespace {

struct PendingValue {
    double value;
    std::string unit;
    int line;
};

[[noreturn]] void fail(int line, const std::string& message) {
    throw ParseError("parameter file line " + std::to_string(line) + ": " + message);
}

// Angular frequency from a cyclic-frequency unit, or rad/s directly.
double to_angular(const PendingValue& pv) {
    if (pv.unit == "rad/s") return pv.value;
    if (pv.unit == "Hz") return kTwoPi * pv.value;
    if (pv.unit == "kHz") return kTwoPi * 1e3 * pv.value;
    if (pv.unit == "MHz") return kTwoPi * 1e6 * pv.value;
    if (pv.unit == "GHz") return kTwoPi * 1e9 * pv.value;
    fail(pv.line, "unknown frequency unit '" + pv.unit + "'");
}

double to_length(const PendingValue& pv) {
    if (pv.unit == "m") return pv.value;
    if (pv.unit == "um") return 1e-6 * pv.value;
    if (pv.unit == "nm") return 1e-9 * pv.value;
    fail(pv.line, "unknown length unit '" + pv.unit + "'");
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

PhysicalParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open parameter file '" + path + "'");

    std::map<std::string, PendingValue> values;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'name = value unit'");
        const std::string name = trim(line.substr(0, eq));
        std::istringstream rest(line.substr(eq + 1));
        double value;
        if (!(rest >> value)) fail(line_no, "cannot parse numeric value");
        std::string unit;
        rest >> unit;
        std::string extra;
        if (rest >> extra) fail(line_no, "trailing content '" + extra + "'");
        if (name.empty()) fail(line_no, "missing parameter name");
        if (values.count(name)) fail(line_no, "duplicate parameter '" + name + "'");
        values[name] = PendingValue{value, unit, line_no};
    }

    const auto take = [&](const std::string& name) -> std::optional<PendingValue> {
        auto it = values.find(name);
        if (it == values.end()) return std::nullopt;
        PendingValue pv = it->second;
        values.erase(it);
        return pv;
    };
    const auto require = [&](const std::string& name) {
        auto pv = take(name);
        if (!pv) throw ParseError("parameter file '" + path + "': missing '" + name + "'");
        return *pv;
    };

    PhysicalParams p;
    p.wavelength = to_length(require("wavelength"));
    p.linewidth = to_angular(require("linewidth"));

    const PendingValue mass = require("mass");
    if (mass.unit == "kg") {
        p.mass = mass.value;
    } else if (mass.unit == "u" || mass.unit == "amu") {
        p.mass = mass.value * kAtomicMassUnit;
    } else {
        fail(mass.line, "unknown mass unit '" + mass.unit + "'");
    }

    const PendingValue rabi = require("rabi");
    p.rabi = to_angular(rabi);

    const PendingValue det = require("detuning");
    if (det.unit == "Gamma") {
        p.detuning = det.value * p.linewidth;
    } else {
        p.detuning = to_angular(det);
    }

    const auto kappa = take("kappa");
    const auto decay = take("decay_length");
    if (kappa && decay) {
        fail(kappa->line, "give either 'kappa' or 'decay_length', not both");
    } else if (kappa) {
        if (kappa->unit != "1/m") fail(kappa->line, "kappa expects unit '1/m'");
        p.kappa = kappa->value;
    } else if (decay) {
        p.kappa = 1.0 / to_length(*decay);
    } else {
        throw ParseError("parameter file '" + path + "': missing 'kappa' or 'decay_length'");
    }

    if (!values.empty()) {
        const auto& first = *values.begin();
        fail(first.second.line, "unknown parameter '" + first.first + "'");
    }

    p.validate();
    return p;
}

}  // namespace evmirror::expparams
