#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <span>
#include <vector>

#include "evmirror/errors.hpp"
#include "evmirror/mirror.hpp"
#include "evmirror/oracle.hpp"

using namespace evmirror;
using oracle::GridSpec;
using oracle::PhaseFit;

namespace {

std::span<const WaveFunctionSample> asymptotic_tail(
    const std::vector<WaveFunctionSample>& samples, const MirrorParams& params) {
    const double start = oracle::asymptotic_window_start(params);
    std::size_t first = 0;
    while (first < samples.size() && samples[first].z < start) ++first;
    return {samples.data() + first, samples.size() - first};
}

}  // namespace

TEST_CASE("GridSpec validation") {
    CHECK_THROWS_AS(GridSpec(1.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(GridSpec(2.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 2), DomainError);
    const GridSpec g(0.0, 1.0, 11);
    CHECK(g.step() == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("asymptotic window start matches its defining condition") {
    const MirrorParams params(3.0, 10.0);
    const double z = oracle::asymptotic_window_start(params);
    CHECK(params.p_max * std::exp(-z) ==
          doctest::Approx(1e-8 * params.alpha * params.alpha).epsilon(1e-12));
}

TEST_CASE("numerov_solve guards its grid") {
    const MirrorParams params(3.0, 10.0);
    // Too coarse: step * alpha above the resolution guard.
    CHECK_THROWS_AS(oracle::numerov_solve(params, GridSpec(-1.0, 30.0, 100)), DomainError);
    // Too shallow: the seed region must satisfy u >= 10 alpha.
    CHECK_THROWS_AS(oracle::numerov_solve(params, GridSpec(1.0, 30.0, 8000)), DomainError);
    // Too deep: the seed would underflow.
    const MirrorParams big(1.0, 10.0);
    CHECK_THROWS_AS(oracle::numerov_solve(big, GridSpec(-700.0, 30.0, 200001)), DomainError);
    try {
        oracle::numerov_solve(big, GridSpec(-700.0, 30.0, 200001));
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("z_min >=") != std::string::npos);
    }
}

TEST_CASE("numerov solution matches the closed-form wave function") {
    const MirrorParams params(3.0, 10.0);
    const auto samples = oracle::numerov_solve(params, oracle::default_grid(params));
    const auto tail = asymptotic_tail(samples, params);
    REQUIRE(tail.size() >= 8);

    const double ref = schr_phase_shift(params);
    const PhaseFit fit_num = oracle::extract_phase(tail, params.alpha, ref, 1e-3);

    // Exact solution sampled on the same tail, fitted the same way.
    std::vector<WaveFunctionSample> exact(tail.size());
    for (std::size_t i = 0; i < tail.size(); ++i) {
        exact[i] = schr_wavefunction(params, tail[i].z);
    }
    const PhaseFit fit_ex = oracle::extract_phase(exact, params.alpha, ref, 1e-3);

    // Align the arbitrary overall signs before comparing pointwise.
    double corr = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) corr += tail[i].psi * exact[i].psi;
    const double sign = corr >= 0.0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        worst = std::max(worst, std::abs(sign * tail[i].psi / fit_num.amplitude -
                                         exact[i].psi / fit_ex.amplitude));
    }
    CHECK(worst <= 1e-6);
    CHECK(std::abs(fit_num.phase - ref) <= 1e-6);
}

TEST_CASE("numerov free-space run reproduces the hard-wall reference phase") {
    // Negligible barrier (p_max = 1e-8) with a node pinned at the origin:
    // the wave is sin(alpha z), whose extracted phase shift is zero.
    const double alpha = 1.0;
    const double pmax2 = 1e-16;
    const auto g = [alpha, pmax2](double z) {
        return pmax2 * std::exp(-2.0 * z) - alpha * alpha;
    };
    const GridSpec grid(0.0, 40.0, 4001);
    const double h = grid.step();
    const auto samples = oracle::numerov_integrate(g, grid, 0.0, h);

    std::vector<WaveFunctionSample> tail;
    for (const auto& s : samples) {
        if (s.z >= 20.0) tail.push_back(s);
    }
    const PhaseFit fit = oracle::extract_phase(tail, alpha, 0.0, 1e-3);
    CHECK(std::abs(fit.phase) <= 1e-6);
}

TEST_CASE("phase extraction on synthetic data") {
    const double alpha = 3.0;
    std::vector<WaveFunctionSample> clean, noisy;
    for (int i = 0; i < 200; ++i) {
        const double z = 10.0 + i * (3.0 * 2.0 * M_PI / alpha) / 199.0;
        const double value = std::sin(alpha * z + 0.7);
        clean.push_back({z, value});
        // Deterministic pseudo-noise at the 1e-8 level.
        noisy.push_back({z, value + 1e-8 * std::sin(12345.6789 * (i + 1))});
    }
    const PhaseFit fit = oracle::extract_phase(clean, alpha);
    CHECK(std::abs(fit.phase - 1.4) <= 1e-12);
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);

    const PhaseFit fit_noisy = oracle::extract_phase(noisy, alpha);
    CHECK(std::abs(fit_noisy.phase - fit.phase) <= 1e-7);
}

TEST_CASE("phase extraction rejects unusable input") {
    const double alpha = 3.0;
    std::vector<WaveFunctionSample> few = {{0, 0}, {1, 1}, {2, 0}};
    CHECK_THROWS_AS(oracle::extract_phase(few, alpha), DomainError);

    std::vector<WaveFunctionSample> narrow;
    for (int i = 0; i < 20; ++i) {
        const double z = 0.05 * i;  // under one wavelength
        narrow.push_back({z, std::sin(alpha * z)});
    }
    CHECK_THROWS_AS(oracle::extract_phase(narrow, alpha), DomainError);

    // A wrong frequency leaves a residual far above tolerance.
    std::vector<WaveFunctionSample> wrong;
    for (int i = 0; i < 200; ++i) {
        const double z = 0.05 * i;
        wrong.push_back({z, std::sin(2.3 * z + 0.4)});
    }
    CHECK_THROWS_AS(oracle::extract_phase(wrong, alpha), FitError);
}

TEST_CASE("phase extraction unwraps onto the reference branch") {
    const double alpha = 3.0;
    const double true_phase = -7.549925932467376;  // outside (-2 pi, 2 pi]
    std::vector<WaveFunctionSample> samples;
    for (int i = 0; i < 300; ++i) {
        const double z = 25.0 + 0.02 * i;
        samples.push_back({z, std::sin(alpha * z + 0.5 * true_phase)});
    }
    const PhaseFit raw = oracle::extract_phase(samples, alpha);
    CHECK(std::abs(raw.phase - true_phase) > 1.0);  // principal branch differs
    const PhaseFit pinned = oracle::extract_phase(samples, alpha, true_phase);
    CHECK(std::abs(pinned.phase - true_phase) <= 1e-10);
}

TEST_CASE("action quadrature agrees with the closed form") {
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    CHECK(oracle::wkb_action_quadrature(params, z0) == 0.0);
    CHECK_THROWS_AS(oracle::wkb_action_quadrature(params, z0 - 0.1), DomainError);

    for (double dz : {0.5, 2.0, 10.0}) {
        const double z = z0 + dz;
        // Independent route for the closed form on moderate offsets, where
        // atanh(p/alpha) is still well conditioned.
        const double p = classical_momentum(params, z);
        const double naive =
            params.alpha * (std::atanh(p / params.alpha) - p / params.alpha);
        const double stable = wkb_action(params, z);
        CHECK(std::abs(naive - stable) <= 1e-6 * std::max(1.0, std::abs(stable)));
        CHECK(std::abs(oracle::wkb_action_quadrature(params, z) - stable) <= 1e-9);
    }
}

TEST_CASE("action integral approaches its linear asymptote") {
    const MirrorParams params(3.0, 10.0);
    const double z0 = turning_point(params);
    const double offset =
        params.alpha * (std::log(2.0 * params.alpha / params.p_max) - 1.0);
    double prev = 1e300;
    for (double dz : {6.0, 9.0, 12.0}) {
        const double z = z0 + dz;
        const double s = oracle::wkb_action_quadrature(params, z);
        const double resid = std::abs(s - (params.alpha * z + offset));
        CHECK(resid < prev);
        prev = resid;
    }
    CHECK(prev <= 1e-9);
}
