// Command-line front end: emits the reduced-model curves (trajectory, wave
// functions, phase shifts, effective-mirror positions), wave-packet delay
// measurements, the SI parameter table, and the oracle cross-validation
// suite as deterministic CSV or JSON.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evmirror/errors.hpp"
#include "evmirror/expparams.hpp"
#include "evmirror/mirror.hpp"
#include "evmirror/oracle.hpp"
#include "evmirror/validate.hpp"
#include "evmirror/wavepacket.hpp"
#include "output.hpp"

namespace evmirror::tools {
namespace {

struct Sweep {
    double start;
    double stop;
    int n;
    bool log_spaced = false;
};

enum class Command { trajectory, wavefunction, phase, mirrors, packet, table, validate };

struct RunConfig {
    Command command = Command::trajectory;
    double alpha = 3.0;
    double p_max = 10.0;
    std::optional<Sweep> sweep;
    double p_bar = 5.0;
    double sigma_p = 0.5;
    std::string params_path;
    std::string format = "csv";
    std::string out_path;       // empty: stdout
    std::string checks = "all";
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) {
        throw ConfigError("--sweep expects start:stop:n[:log]");
    }
    try {
        s.start = std::stod(parts[0]);
        s.stop = std::stod(parts[1]);
        s.n = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("--sweep expects numeric start:stop:n[:log]");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            s.log_spaced = true;
        } else if (parts[3] != "linear") {
            throw ConfigError("--sweep spacing must be 'log' or 'linear'");
        }
    }
    if (s.n < 2 && !(s.n == 1 && s.start == s.stop)) {
        throw ConfigError("--sweep needs n >= 2 (or n = 1 with start == stop)");
    }
    if (!(s.start < s.stop) && s.n > 1) {
        throw ConfigError("--sweep range must be ordered (start < stop)");
    }
    if (s.log_spaced && s.start <= 0.0) {
        throw ConfigError("--sweep log spacing needs positive bounds");
    }
    return s;
}

std::vector<double> sweep_values(const Sweep& s) {
    std::vector<double> v(s.n);
    if (s.n == 1) {
        v[0] = s.start;
        return v;
    }
    if (s.log_spaced) {
        const double ratio = std::log(s.stop / s.start);
        for (int i = 0; i < s.n; ++i) {
            v[i] = s.start * std::exp(ratio * (static_cast<double>(i) / (s.n - 1)));
        }
        v[s.n - 1] = s.stop;
    } else {
        const double span = s.stop - s.start;
        for (int i = 0; i < s.n; ++i) {
            v[i] = s.start + span * (static_cast<double>(i) / (s.n - 1));
        }
        v[s.n - 1] = s.stop;
    }
    return v;
}

void add_param(DataTable& t, const std::string& key, double value) {
    t.meta.emplace_back(key, format_number(value));
}

DataTable cmd_trajectory(const RunConfig& cfg) {
    const MirrorParams params(cfg.alpha, cfg.p_max);
    const Sweep sweep = cfg.sweep.value_or(Sweep{-6.0, 6.0, 241, false});
    const double tau = reflection_time(params);
    const double zeta_cl = classical_mirror_position(params);

    DataTable t;
    t.command = "trajectory";
    add_param(t, "alpha", cfg.alpha);
    add_param(t, "pmax", cfg.p_max);
    t.columns = {"t_over_tau", "kappa_z", "zeta_cl"};
    for (double x : sweep_values(sweep)) {
        t.add_row({x, classical_trajectory(params, x * tau), zeta_cl});
    }
    return t;
}

DataTable cmd_wavefunction(const RunConfig& cfg) {
    const MirrorParams params(cfg.alpha, cfg.p_max);
    const Sweep sweep = cfg.sweep.value_or(Sweep{-1.0, 8.0, 901, false});
    const double z0 = turning_point(params);

    DataTable t;
    t.command = "wavefunction";
    add_param(t, "alpha", cfg.alpha);
    add_param(t, "pmax", cfg.p_max);
    add_param(t, "turning_point", z0);
    t.columns = {"kappa_z", "psi_wkb", "psi_schr"};
    for (double z : sweep_values(sweep)) {
        Cell wkb{};  // empty for the classically forbidden side
        if (z > z0) wkb = wkb_wavefunction(params, z).psi;
        t.add_row({z, wkb, schr_wavefunction(params, z).psi});
    }
    return t;
}

DataTable cmd_phase(const RunConfig& cfg) {
    const Sweep sweep = cfg.sweep.value_or(Sweep{0.01, 20.0, 201, true});

    DataTable t;
    t.command = "phase";
    add_param(t, "pmax", cfg.p_max);
    t.columns = {"alpha", "dphi_wkb", "dphi_schr", "difference"};
    for (double alpha : sweep_values(sweep)) {
        const double wkb = wkb_phase_shift(alpha, cfg.p_max);
        const double schr = schr_phase_shift(alpha, cfg.p_max);
        t.add_row({alpha, wkb, schr, schr - wkb});
    }
    return t;
}

DataTable cmd_mirrors(const RunConfig& cfg) {
    const Sweep sweep = cfg.sweep.value_or(Sweep{0.05, 20.0, 201, true});

    DataTable t;
    t.command = "mirrors";
    add_param(t, "pmax", cfg.p_max);
    t.columns = {"alpha_bar", "zeta_cl", "zeta_wkb", "zeta_wp"};
    for (double alpha : sweep_values(sweep)) {
        const double zeta_cl = classical_mirror_position(alpha, cfg.p_max);
        t.add_row({alpha, zeta_cl, zeta_cl + 1.0,
                   wavepacket_mirror_position(alpha, cfg.p_max)});
    }
    return t;
}

DataTable cmd_packet(const RunConfig& cfg) {
    namespace wp = evmirror::wavepacket;
    const wp::PacketSpec spec(cfg.p_bar, cfg.sigma_p, cfg.p_max);
    const wp::DelayMeasurement m = wp::measure_mirror_position(spec);

    DataTable t;
    t.command = "packet";
    add_param(t, "pbar", cfg.p_bar);
    add_param(t, "sigma_p", cfg.sigma_p);
    add_param(t, "pmax", cfg.p_max);
    add_param(t, "zeta_wp_fitted", m.zeta_fitted);
    add_param(t, "zeta_wp_analytic", m.zeta_analytic);
    t.columns = {"t_incident", "z_wp_incident", "t_reflected", "z_wp_reflected"};
    for (std::size_t i = 0; i < m.incident.size(); ++i) {
        t.add_row({m.incident[i].t, m.incident[i].centroid,
                   m.reflected[i].t, m.reflected[i].centroid});
    }
    return t;
}

DataTable cmd_table(const RunConfig& cfg) {
    namespace xp = evmirror::expparams;
    const xp::PhysicalParams params =
        cfg.params_path.empty() ? xp::rb85_d2_typical() : xp::load_params_file(cfg.params_path);
    const xp::MirrorReport report = xp::build_table(params);

    DataTable t;
    t.command = "table";
    add_param(t, "wavelength_m", params.wavelength);
    add_param(t, "linewidth_rad_s", params.linewidth);
    add_param(t, "detuning_rad_s", params.detuning);
    add_param(t, "rabi_rad_s", params.rabi);
    add_param(t, "mass_kg", params.mass);
    add_param(t, "kappa_per_m", params.kappa);
    t.meta.emplace_back("coherent_ok", report.coherent_ok ? "true" : "false");
    t.meta.emplace_back("adiabatic_ok", report.adiabatic_ok ? "true" : "false");

    t.columns = {"quantity", "computed", "reference", "rel_tolerance", "verdict"};
    for (const auto& row : xp::compare_with_reference(report)) {
        t.add_row({row.quantity, row.computed, row.reference, row.rel_tolerance,
                   std::string(row.within ? "within" : "outside")});
    }
    // Not derivable from the model; reproduced as an annotation only.
    t.add_row({std::string("nonadiabatic_departure_prob"), Cell{}, 8e-15, Cell{},
               std::string("annotation")});
    return t;
}

int cmd_validate(const RunConfig& cfg, std::ostream& os) {
    namespace vl = evmirror::validate;
    vl::SuiteOptions options;
    if (cfg.checks != "all") {
        options.checks.clear();
        std::stringstream ss(cfg.checks);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (!name.empty()) options.checks.insert(vl::check_from_name(name));
        }
    }
    const std::vector<vl::CheckResult> results = vl::run_suite(options);

    DataTable t;
    t.command = "validate";
    t.meta.emplace_back("checks", cfg.checks);
    t.columns = {"status", "check", "measured", "tolerance", "detail"};
    int failures = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        t.add_row({std::string(r.passed ? "PASS" : "FAIL"), r.name,
                   r.measured, r.tolerance, r.detail});
    }
    t.meta.emplace_back("failures", std::to_string(failures));

    if (cfg.format == "json") {
        write_json(t, os);
    } else {
        write_csv(t, os);
    }
    return failures == 0 ? 0 : 1;
}

int run(const RunConfig& cfg) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) throw ConfigError("cannot open output file '" + cfg.out_path + "'");
        os = &file;
    }

    if (cfg.command == Command::validate) {
        return cmd_validate(cfg, *os);
    }

    DataTable t;
    switch (cfg.command) {
        case Command::trajectory: t = cmd_trajectory(cfg); break;
        case Command::wavefunction: t = cmd_wavefunction(cfg); break;
        case Command::phase: t = cmd_phase(cfg); break;
        case Command::mirrors: t = cmd_mirrors(cfg); break;
        case Command::packet: t = cmd_packet(cfg); break;
        case Command::table: t = cmd_table(cfg); break;
        case Command::validate: break;  // handled above
    }
    if (cfg.format == "json") {
        write_json(t, *os);
    } else {
        write_csv(t, *os);
    }
    return 0;
}

}  // namespace
}  // namespace evmirror::tools

int main(int argc, char** argv) {
    using namespace evmirror::tools;

    CLI::App app{"Matter-wave reflection at an exponentially decaying mirror potential"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string sweep_text;

    const auto add_common = [&](CLI::App* sub, bool with_model) {
        sub->add_option("--format", cfg.format, "Output format (csv or json)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out_path, "Output path (default: stdout)");
        if (with_model) {
            sub->add_option("--alpha", cfg.alpha, "Incident momentum, units hbar*kappa");
            sub->add_option("--pmax", cfg.p_max, "Barrier momentum, units hbar*kappa");
            sub->add_option("--sweep", sweep_text, "Sweep as start:stop:n[:log]");
        }
    };

    add_common(app.add_subcommand("trajectory", "Classical bounce z(t) and its asymptotes"), true);
    add_common(app.add_subcommand("wavefunction", "WKB and exact stationary wave functions"), true);
    add_common(app.add_subcommand("phase", "Reflection phase shifts vs incident momentum"), true);
    add_common(app.add_subcommand("mirrors", "Effective mirror positions vs incident momentum"), true);

    CLI::App* packet = app.add_subcommand("packet", "Wave-packet reflection delay measurement");
    add_common(packet, false);
    packet->add_option("--pbar", cfg.p_bar, "Mean momentum, units hbar*kappa");
    packet->add_option("--sigma-p", cfg.sigma_p, "Momentum spread, units hbar*kappa");
    packet->add_option("--pmax", cfg.p_max, "Barrier momentum, units hbar*kappa");

    CLI::App* table = app.add_subcommand("table", "SI mirror parameters vs published values");
    add_common(table, false);
    table->add_option("--params", cfg.params_path, "Parameter file (name = value unit)");

    CLI::App* validate = app.add_subcommand("validate", "Oracle-vs-closed-form cross checks");
    add_common(validate, false);
    validate->add_option("--checks", cfg.checks,
                         "Comma-separated subset of: numerov-phase, action-quadrature, "
                         "scale-covariance, energy-conservation, numerov-convergence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help/usage text
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("trajectory")) cfg.command = Command::trajectory;
        if (app.got_subcommand("wavefunction")) cfg.command = Command::wavefunction;
        if (app.got_subcommand("phase")) cfg.command = Command::phase;
        if (app.got_subcommand("mirrors")) cfg.command = Command::mirrors;
        if (app.got_subcommand("packet")) cfg.command = Command::packet;
        if (app.got_subcommand("table")) cfg.command = Command::table;
        if (app.got_subcommand("validate")) cfg.command = Command::validate;
        if (!sweep_text.empty()) cfg.sweep = parse_sweep(sweep_text);
        return run(cfg);
    } catch (const evmirror::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
