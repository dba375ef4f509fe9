#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "evmirror/errors.hpp"
#include "evmirror/mirror.hpp"
#include "evmirror/specfun.hpp"

using namespace evmirror;

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("MirrorParams enforces the reflection condition") {
    CHECK_NOTHROW(MirrorParams(3.0, 10.0));
    CHECK_THROWS_AS(MirrorParams(0.0, 10.0), DomainError);
    CHECK_THROWS_AS(MirrorParams(-1.0, 10.0), DomainError);
    CHECK_THROWS_AS(MirrorParams(10.0, 10.0), DomainError);
    CHECK_THROWS_AS(MirrorParams(11.0, 10.0), DomainError);
    CHECK_THROWS_AS(MirrorParams(3.0, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("turning point") {
    CHECK(turning_point(MirrorParams(3.0, 10.0)) == std::log(10.0 / 3.0));
    CHECK(std::abs(turning_point(MirrorParams(1.0, M_E)) - 1.0) <= 1e-15);
    // Limit toward the boundary alpha -> p_max: z0 -> 0.
    CHECK(turning_point(MirrorParams(10.0 * (1.0 - 1e-12), 10.0)) ==
          doctest::Approx(1e-12).epsilon(1e-3));
}

TEST_CASE("reflection time") {
    CHECK(reflection_time(MirrorParams(1.0, 10.0)) == 1.0);
    CHECK(reflection_time(MirrorParams(3.0, 10.0)) == 1.0 / 3.0);
}

TEST_CASE("classical trajectory") {
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    const double tau = reflection_time(params);

    CHECK(std::abs(classical_trajectory(params, 0.0) - z0) <= 2e-16);
    for (double t : {0.3, 1.0, 4.7}) {
        CHECK(classical_trajectory(params, t) == classical_trajectory(params, -t));
    }
    CHECK(std::abs(classical_trajectory(params, tau) -
                   (z0 + std::log(std::cosh(1.0)))) <= 1e-15);

    // Far out, the bounce hugs the free asymptote z0 - ln 2 + |t|/tau.
    const double t = 20.0 * tau;
    CHECK(std::abs(classical_trajectory(params, t) - (z0 - M_LN2 + t / tau)) <= 1e-15);

    // No overflow even at absurd times.
    CHECK(std::isfinite(classical_trajectory(params, 700.0 * tau)));
    CHECK(std::isfinite(classical_trajectory(params, 1e300)));
}

TEST_CASE("classical mirror position") {
    const MirrorParams params(3.0, 10.0);
    CHECK(classical_mirror_position(params) == turning_point(params) - M_LN2);
    CHECK(std::abs(classical_mirror_position(MirrorParams(5.0, 10.0))) <= 1e-15);
    // Slow atoms see a mirror receding to infinity.
    CHECK(classical_mirror_position(MirrorParams(1e-6, 10.0)) > 15.0);
    CHECK(classical_mirror_position(MirrorParams(1e-8, 10.0)) >
          classical_mirror_position(MirrorParams(1e-6, 10.0)));
}

TEST_CASE("classical momentum") {
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    CHECK(classical_momentum(params, z0) <= 1e-6);
    CHECK(std::abs(classical_momentum(params, 40.0) - 3.0) <= 1e-12);
    CHECK(rel_err(classical_momentum(params, 2.0),
                  std::sqrt(9.0 - 100.0 * std::exp(-4.0))) <= 1e-15);
    CHECK_THROWS_AS(classical_momentum(params, z0 - 0.01), DomainError);
}

TEST_CASE("WKB wave function domain edge") {
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    CHECK_THROWS_AS(wkb_wavefunction(params, z0), DomainError);
    CHECK_THROWS_AS(wkb_wavefunction(params, z0 - 1.0), DomainError);
    const auto s = wkb_wavefunction(params, z0 + 1e-9);
    CHECK(std::isfinite(s.psi));
    CHECK(std::abs(s.psi) > 10.0);  // large but finite near the divergence
}

TEST_CASE("WKB wave function reaches its asymptotic form") {
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    const double dphi = wkb_phase_shift(params);
    for (double z = z0 + 30.0; z < z0 + 32.0; z += 0.1) {
        const double expected =
            std::sqrt(4.0 / params.alpha) * std::sin(params.alpha * z + 0.5 * dphi);
        CHECK(std::abs(wkb_wavefunction(params, z).psi - expected) <= 1e-6);
    }
}

TEST_CASE("WKB phase shift") {
    CHECK(std::abs(wkb_phase_shift(MirrorParams(5.0, 10.0)) - (M_PI / 2.0 - 10.0)) <= 1e-14);
    CHECK(rel_err(wkb_phase_shift(MirrorParams(3.0, 10.0)),
                  M_PI / 2.0 - 6.0 * (1.0 + std::log(10.0 / 6.0))) <= 1e-15);
    CHECK(wkb_phase_shift(0.0, 10.0) == M_PI / 2.0);
    CHECK_THROWS_AS(wkb_phase_shift(-0.1, 10.0), DomainError);

    // Monotone approach to the pi/2 limit.
    double prev = std::abs(wkb_phase_shift(0.1, 10.0) - M_PI / 2.0);
    for (double alpha : {0.05, 0.01}) {
        const double dev = std::abs(wkb_phase_shift(alpha, 10.0) - M_PI / 2.0);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("WKB effective mirror") {
    const MirrorParams params(3.0, 10.0);
    const EffectiveMirror m = wkb_effective_mirror(params);
    CHECK(m.delta_phi == M_PI / 2.0);
    CHECK(m.zeta == classical_mirror_position(params) + 1.0);
    CHECK(m.delta_phi >= 0.0);
    CHECK(m.delta_phi < 2.0 * M_PI);
    // Reconstruction: dphi = delta_phi - 2 alpha zeta, an exact identity.
    const double dphi = wkb_phase_shift(params);
    CHECK(std::abs(dphi - (m.delta_phi - 2.0 * params.alpha * m.zeta)) <=
          1e-13 * std::max(1.0, std::abs(dphi)));

    for (double alpha : {0.3, 1.0, 7.0}) {
        const MirrorParams p(alpha, 10.0);
        CHECK(wkb_effective_mirror(p).zeta - classical_mirror_position(p) == 1.0);
    }
}

TEST_CASE("exact wave function is real, finite, and decays inside the barrier") {
    const MirrorParams params(3.0, 10.0);
    for (double z = -2.0; z <= 35.0; z += 0.25) {
        const auto s = schr_wavefunction(params, z);
        CHECK(std::isfinite(s.psi));
    }
    // Decay scale deep inside: ln |psi| tracks -u with u = p_max e^{-z}.
    const double z = -1.0;
    const double u = params.p_max * std::exp(-z);
    const double psi = schr_wavefunction(params, z).psi;
    const double b4 = std::sqrt(M_PI / (2.0 * u)) * std::exp(-u) *
                      std::sqrt(4.0 / M_PI * std::sinh(M_PI * params.alpha));
    CHECK(psi > 0.0);
    CHECK(std::abs(std::log(psi) - std::log(b4)) <= 0.03 * u);
}

TEST_CASE("exact wave function reaches its asymptotic form") {
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    const double dphi = schr_phase_shift(params);
    for (double z = z0 + 30.0; z < z0 + 32.0; z += 0.1) {
        const double expected =
            std::sqrt(4.0 / params.alpha) * std::sin(params.alpha * z + 0.5 * dphi);
        CHECK(std::abs(schr_wavefunction(params, z).psi - expected) <= 1e-8);
    }
}

TEST_CASE("exact wave function equals its Bessel-difference form") {
    const MirrorParams params(3.0, 10.0);
    for (double z : {0.3, 1.0, 2.0, 4.0}) {
        const double u = params.p_max * std::exp(-z);
        const auto i = specfun::bessel_i_imag_order(params.alpha, u);
        const double via_i = -std::sqrt(4.0 / params.alpha * M_PI * params.alpha /
                                        std::sinh(M_PI * params.alpha)) *
                             i.value.imag();
        const double envelope = std::sqrt(4.0 / params.alpha);
        CHECK(std::abs(schr_wavefunction(params, z).psi - via_i) <= 1e-10 * envelope);
    }
}

TEST_CASE("exact and WKB wave functions agree away from the turning point") {
    // The residual phase offset between the two solutions is 1/(12 alpha),
    // so the pointwise gap bottoms out near 3% of the local amplitude at
    // alpha = 3; assert 2% of the peak-to-peak swing.
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    for (double z = z0 + 3.0; z <= z0 + 15.0; z += 0.05) {
        const double envelope = std::sqrt(4.0 / classical_momentum(params, z));
        const double gap =
            std::abs(wkb_wavefunction(params, z).psi - schr_wavefunction(params, z).psi);
        CHECK(gap <= 0.02 * 2.0 * envelope);
    }
}

TEST_CASE("exact phase shift") {
    CHECK(schr_phase_shift(0.0, 10.0) == 0.0);
    CHECK(rel_err(schr_phase_shift(MirrorParams(3.0, 10.0)),
                  -7.549925932467375846957) <= 1e-14);

    // Quantum regime: dphi ~ -2 alpha (gamma + ln(p_max / 2)).
    const double alpha = 0.01;
    const double approx = -2.0 * alpha * (kEulerGamma + std::log(5.0));
    CHECK(std::abs(schr_phase_shift(alpha, 10.0) - approx) <= 1e-6);

    // Monotone approach to the 0 limit.
    double prev = std::abs(schr_phase_shift(0.1, 10.0));
    for (double a : {0.05, 0.01}) {
        const double dev = std::abs(schr_phase_shift(a, 10.0));
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("exact phase shift approaches the WKB value with a -1/(6 alpha) gap") {
    for (double alpha : {10.0, 20.0, 50.0}) {
        const double gap =
            schr_phase_shift(alpha, 10.0) - wkb_phase_shift(alpha, 10.0);
        CHECK(std::abs(gap + 1.0 / (6.0 * alpha)) <= 1.0 / (alpha * alpha * alpha));
    }
    const double gap50 = schr_phase_shift(50.0, 10.0) - wkb_phase_shift(50.0, 10.0);
    CHECK(std::abs(gap50 - (-1.0 / 300.0)) <= 2e-4);
}

TEST_CASE("quantum-regime effective mirror") {
    const MirrorParams params(0.01, 10.0);
    const EffectiveMirror m = schr_effective_mirror_small_alpha(params);
    CHECK(m.delta_phi == 0.0);
    CHECK(rel_err(m.zeta, std::log(5.0) + kEulerGamma) <= 1e-14);
    // Reconstruction against the exact shift is good to O(alpha^3).
    CHECK(std::abs(schr_phase_shift(params) - (-2.0 * params.alpha * m.zeta)) <= 1e-5);

    CHECK_THROWS_AS(schr_effective_mirror_small_alpha(MirrorParams(0.25, 10.0)),
                    ApplicabilityError);
    CHECK_NOTHROW(schr_effective_mirror_small_alpha(MirrorParams(0.2, 10.0)));
}

TEST_CASE("wave-packet mirror position") {
    CHECK(rel_err(wavepacket_mirror_position(MirrorParams(1.0, 10.0)),
                  std::log(5.0) - 0.09465032062247697727188) <= 1e-13);
    CHECK(rel_err(wavepacket_mirror_position(MirrorParams(0.5, 10.0)),
                  1.938324269663559724945) <= 1e-13);
    CHECK(rel_err(wavepacket_mirror_position(MirrorParams(5.0, 10.0)),
                  -0.003346932181646210782979) <= 1e-10);

    // Equals -(1/2) d(dphi)/d(alpha): central difference cross-check.
    const double h = 1e-5;
    for (double alpha : {0.5, 3.0, 8.0}) {
        const double fd = -(schr_phase_shift(alpha + h, 10.0) -
                            schr_phase_shift(alpha - h, 10.0)) /
                          (4.0 * h);
        CHECK(std::abs(wavepacket_mirror_position(alpha, 10.0) - fd) <= 1e-7);
    }

    // Semiclassical limit: tracks the classical mirror to O(1/alpha^2).
    CHECK(std::abs(wavepacket_mirror_position(MirrorParams(20.0, 50.0)) -
                   classical_mirror_position(MirrorParams(20.0, 50.0))) <= 1e-3);

    // Quantum limit: plateau at ln(p_max/2) + gamma.
    CHECK(std::abs(wavepacket_mirror_position(1e-4, 10.0) -
                   (std::log(5.0) + kEulerGamma)) <= 1e-6);
    CHECK(wavepacket_mirror_position(0.0, 10.0) ==
          doctest::Approx(std::log(5.0) + kEulerGamma).epsilon(1e-14));
}

TEST_CASE("closed-form overloads continue past the reflecting window") {
    // Momentum sweeps evaluate the formulas at alpha >= p_max, where the
    // strict parameter type would refuse to exist.
    CHECK(std::isfinite(schr_phase_shift(20.0, 10.0)));
    CHECK(std::isfinite(wkb_phase_shift(20.0, 10.0)));
    CHECK(classical_mirror_position(20.0, 10.0) ==
          doctest::Approx(std::log(0.5) - M_LN2).epsilon(1e-14));
    CHECK(std::abs(wavepacket_mirror_position(20.0, 10.0) -
                   (-1.386502746598724759193)) <= 1e-13);
    CHECK_THROWS_AS(turning_point(0.0, 10.0), DomainError);
    CHECK_THROWS_AS(schr_phase_shift(1.0, 0.0), DomainError);

    // The explicit continuation factory admits alpha >= p_max; the turning
    // point then sits at or behind the physical mirror plane.
    const MirrorParams over = MirrorParams::extended(8.0, 5.0);
    CHECK(turning_point(over) < 0.0);
    CHECK(std::isfinite(schr_wavefunction(over, 1.0).psi));
    CHECK_THROWS_AS(MirrorParams::extended(-1.0, 5.0), DomainError);
}

TEST_CASE("scale covariance of the exact solution") {
    // (p_max, z) -> (p_max e^a, z + a) leaves u = p_max e^{-z} unchanged,
    // so psi is pointwise invariant and the phase shift drops by 2 alpha a.
    const double shift = 0.37;
    for (double alpha : {0.5, 3.0}) {
        const MirrorParams base(alpha, 10.0);
        const MirrorParams moved(alpha, 10.0 * std::exp(shift));
        const double z0 = turning_point(base);
        for (double z : {z0 - 1.0, z0 + 0.7, z0 + 3.0}) {
            CHECK(std::abs(schr_wavefunction(base, z).psi -
                           schr_wavefunction(moved, z + shift).psi) <= 1e-12);
        }
        CHECK(std::abs(schr_phase_shift(moved) -
                       (schr_phase_shift(base) - 2.0 * alpha * shift)) <= 1e-12);
    }
}
