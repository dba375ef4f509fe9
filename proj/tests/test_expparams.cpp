#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "evmirror/errors.hpp"
#include "evmirror/expparams.hpp"

using namespace evmirror;
using namespace evmirror::expparams;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "evmirror_params_test_" + std::to_string(counter++) + ".tmp";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("saturation formula") {
    PhysicalParams p = rb85_d2_typical();
    p.rabi = 0.0;
    CHECK(saturation(p) == 0.0);

    PhysicalParams q{};  // direct substitution: Gamma = 0, Delta = Omega
    q.detuning = 2.0e9;
    q.rabi = 2.0e9;
    q.linewidth = 0.0;
    CHECK(saturation(q) == 0.5);
}

TEST_CASE("bundled Rb-85 configuration reproduces the published rows") {
    const PhysicalParams p = rb85_d2_typical();
    const MirrorReport r = build_table(p);
    CHECK(rel_err(r.saturation_s, 6e-4) <= 0.5);
    CHECK(rel_err(r.p_max_over_hbar_kappa, 150.0) <= 0.3);
    CHECK(rel_err(r.tau_refl_in_linewidths, 4.0) <= 0.4);
    CHECK(rel_err(r.spont_emission_prob, 2.5e-3) <= 0.5);
    CHECK(r.coherent_ok);
    CHECK(r.adiabatic_ok);

    for (const auto& row : compare_with_reference(r)) {
        CHECK(row.within);
    }
}

TEST_CASE("coherence and adiabaticity flags follow their conditions") {
    PhysicalParams p = rb85_d2_typical();
    p.rabi = p.detuning;  // saturation 1/2, far beyond the coherent regime
    CHECK_FALSE(build_table(p).coherent_ok);

    PhysicalParams q = rb85_d2_typical();
    q.detuning = 5.0 * q.linewidth;
    CHECK_FALSE(build_table(q).adiabatic_ok);
    q.detuning = 10.0 * q.linewidth;
    CHECK(build_table(q).adiabatic_ok);
}

TEST_CASE("p_max scaling with detuning at fixed saturation") {
    const PhysicalParams p1 = rb85_d2_typical();
    PhysicalParams p2 = p1;
    p2.detuning = 2.0 * p1.detuning;
    // Rescale the drive so the saturation parameter is exactly unchanged.
    p2.rabi = p1.rabi * std::sqrt((p2.detuning * p2.detuning +
                                   0.25 * p2.linewidth * p2.linewidth) /
                                  (p1.detuning * p1.detuning +
                                   0.25 * p1.linewidth * p1.linewidth));
    CHECK(rel_err(saturation(p2), saturation(p1)) <= 1e-12);
    const double r1 = p_max_from_saturation(p1);
    const double r2 = p_max_from_saturation(p2);
    CHECK(rel_err(r2 * r2, 2.0 * r1 * r1) <= 1e-12);

    PhysicalParams zero = p1;
    zero.rabi = 0.0;
    CHECK(p_max_from_saturation(zero) == 0.0);

    // Stronger drive at fixed detuning reflects faster atoms.
    PhysicalParams strong = p1;
    strong.rabi = 2.0 * p1.rabi;
    CHECK(p_max_from_saturation(strong) > p_max_from_saturation(p1));
}

TEST_CASE("reflection time scales as 1/p and round-trips") {
    const PhysicalParams p = rb85_d2_typical();
    const double t150 = reflection_time_physical(p, 150.0);
    const double t300 = reflection_time_physical(p, 300.0);
    CHECK(rel_err(t150, 2.0 * t300) <= 1e-12);
    CHECK(rel_err(alpha_from_reflection_time(p, t150), 150.0) <= 1e-12);
    CHECK_THROWS_AS(reflection_time_physical(p, 0.0), DomainError);
    CHECK_THROWS_AS(reflection_time_physical(p, -3.0), DomainError);
}

TEST_CASE("spontaneous emission estimate") {
    const PhysicalParams p = rb85_d2_typical();
    CHECK(rel_err(spont_emission_probability(p, 300.0),
                  2.0 * spont_emission_probability(p, 150.0)) <= 1e-12);
    PhysicalParams far = p;
    far.detuning = 1e25;
    CHECK(spont_emission_probability(far, 150.0) <= 1e-12);
}

TEST_CASE("momentum conversions round-trip") {
    const PhysicalParams p = rb85_d2_typical();
    for (double alpha : {0.5, 3.0, 150.0}) {
        CHECK(rel_err(alpha_from_momentum_si(p, momentum_si_from_alpha(p, alpha)), alpha) <=
              1e-12);
    }
}

TEST_CASE("parameter validation") {
    PhysicalParams p = rb85_d2_typical();
    CHECK_NOTHROW(p.validate());
    p.kappa = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = rb85_d2_typical();
    p.detuning = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("parameter file round trip") {
    const TempFile f(
        "# bundled Rb-85 configuration, spelled out\n"
        "wavelength = 780 nm\n"
        "linewidth = 6 MHz\n"
        "detuning = 5e4 Gamma\n"
        "rabi = 10.392 GHz   # chosen for s = 6e-4\n"
        "mass = 84.911789732 u\n"
        "decay_length = 100 nm\n");
    const PhysicalParams p = load_params_file(f.path);
    const PhysicalParams ref = rb85_d2_typical();
    CHECK(rel_err(p.wavelength, ref.wavelength) <= 1e-12);
    CHECK(rel_err(p.linewidth, ref.linewidth) <= 1e-12);
    CHECK(rel_err(p.detuning, ref.detuning) <= 1e-12);
    CHECK(rel_err(p.rabi, ref.rabi) <= 1e-12);
    CHECK(rel_err(p.mass, ref.mass) <= 1e-12);
    CHECK(rel_err(p.kappa, ref.kappa) <= 1e-12);
}

TEST_CASE("parameter file accepts explicit kappa and angular units") {
    const TempFile f(
        "wavelength = 7.8e-7 m\n"
        "linewidth = 37699111.843077517 rad/s\n"
        "detuning = 1884955592153.8757 rad/s\n"
        "rabi = 65294861712.210251 rad/s\n"
        "mass = 1.4099934406491076e-25 kg\n"
        "kappa = 1e7 1/m\n");
    const PhysicalParams p = load_params_file(f.path);
    CHECK(rel_err(p.kappa, 1e7) <= 1e-15);
    CHECK(rel_err(p.linewidth, 2.0 * M_PI * 6e6) <= 1e-12);
}

TEST_CASE("parameter file errors carry line numbers") {
    const auto expect_parse_error = [](const std::string& contents,
                                       const std::string& needle) {
        const TempFile f(contents);
        try {
            load_params_file(f.path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    expect_parse_error("wavelength = 780 nm\nbogus line\n", "line 2");
    expect_parse_error("wavelength = abc nm\n", "line 1");
    expect_parse_error("wavelength = 780 furlong\n", "unknown length unit");
    expect_parse_error(
        "wavelength = 780 nm\nwavelength = 781 nm\n", "duplicate");
    expect_parse_error(
        "wavelength = 780 nm\nlinewidth = 6 MHz\ndetuning = 5e4 Gamma\n"
        "rabi = 10.392 GHz\nmass = 84.9 u\nkappa = 1e7 1/m\n"
        "decay_length = 100 nm\n",
        "not both");
    expect_parse_error(
        "wavelength = 780 nm\nlinewidth = 6 MHz\ndetuning = 5e4 Gamma\n"
        "rabi = 10.392 GHz\nmass = 84.9 u\nkappa = 1e7 1/m\nspin = 2 hbar\n",
        "unknown parameter");

    const TempFile missing("wavelength = 780 nm\n");
    CHECK_THROWS_AS(load_params_file(missing.path), ParseError);
    CHECK_THROWS_AS(load_params_file("no_such_file.params"), ParseError);
}
