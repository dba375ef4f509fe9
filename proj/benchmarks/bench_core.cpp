#include <benchmark/benchmark.h>

#include <cmath>

#include "evmirror/mirror.hpp"
#include "evmirror/oracle.hpp"
#include "evmirror/specfun.hpp"
#include "evmirror/wavepacket.hpp"

namespace {

using namespace evmirror;

void BM_LnGammaComplex(benchmark::State& state) {
    const std::complex<double> w{1.0, 3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::ln_gamma(w));
    }
}
BENCHMARK(BM_LnGammaComplex);

void BM_BesselISeries(benchmark::State& state) {
    const double u = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_i_imag_order(3.0, u));
    }
}
BENCHMARK(BM_BesselISeries)->Arg(1)->Arg(10)->Arg(30);

void BM_BesselKSeriesPath(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_k_imag_order(1.0, 8.0));
    }
}
BENCHMARK(BM_BesselKSeriesPath);

void BM_BesselKIntegralPath(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_k_imag_order(1.0, 16.0));
    }
}
BENCHMARK(BM_BesselKIntegralPath);

void BM_SchrWavefunction(benchmark::State& state) {
    const MirrorParams params(3.0, 10.0);
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(schr_wavefunction(params, 0.5 + std::fmod(z, 6.0)));
        z += 0.1;
    }
}
BENCHMARK(BM_SchrWavefunction);

void BM_NumerovSolve(benchmark::State& state) {
    const MirrorParams params(3.0, 10.0);
    const oracle::GridSpec grid = oracle::default_grid(params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::numerov_solve(params, grid));
    }
}
BENCHMARK(BM_NumerovSolve);

void BM_WkbActionQuadrature(benchmark::State& state) {
    const MirrorParams params(3.0, 10.0);
    const double z = turning_point(params) + 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::wkb_action_quadrature(params, z));
    }
}
BENCHMARK(BM_WkbActionQuadrature);

void BM_PacketSnapshot(benchmark::State& state) {
    using namespace evmirror::wavepacket;
    const PacketSpec spec(5.0, 0.5, 10.0);
    const MomentumSpectrum spectrum = gaussian_spectrum(spec, 512);
    const std::vector<double> grid = linear_grid(-40.0, 60.0, 1024);
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize_reflected(spectrum, grid, 3.0));
    }
}
BENCHMARK(BM_PacketSnapshot);

}  // namespace

BENCHMARK_MAIN();
