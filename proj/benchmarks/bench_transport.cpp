#include <benchmark/benchmark.h>

#include "wqed/bands.hpp"
#include "wqed/bidirectional.hpp"
#include "wqed/chiral.hpp"
#include "wqed/disorder.hpp"

using namespace wqed;

namespace {

WaveguideConfig symmetric_wg() {
    WaveguideConfig wg;
    wg.kind = WaveguideKind::Bidirectional;
    return wg;
}

Atom symmetric_atom() { return Atom{0.0, 1.0, 0.0, 0.1, 0.1}; }

void BM_ChiralTransmission(benchmark::State& state) {
    const AtomChain chain =
        build_periodic_chain(state.range(0), 0.5, Atom{0.0, 1.0, 0.1, 0.1, 0.0});
    const PhotonQuery q{1.05};
    for (auto _ : state) benchmark::DoNotOptimize(chiral_transmission(chain, q));
    state.SetComplexityN(state.range(0));
}

void BM_ChainScattering(benchmark::State& state) {
    const AtomChain chain = build_periodic_chain(state.range(0), 0.5, symmetric_atom());
    const WaveguideConfig wg = symmetric_wg();
    const PhotonQuery q{1.5};
    for (auto _ : state) benchmark::DoNotOptimize(bidirectional_transport(chain, q, wg));
    state.SetComplexityN(state.range(0));
}

void BM_DenseOracle(benchmark::State& state) {
    const AtomChain chain = build_periodic_chain(state.range(0), 0.5, symmetric_atom());
    const WaveguideConfig wg = symmetric_wg();
    const PhotonQuery q{1.5};
    for (auto _ : state) benchmark::DoNotOptimize(solve_amplitudes_dense(chain, q, wg));
    state.SetComplexityN(state.range(0));
}

void BM_AvgTauSquared(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(avg_tau_squared(0.1, 0.07, 0.05, 0.1));
}

void BM_LocalizationLengthChiral(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(localization_length_chiral(0.1, 0.1, 0.1, 0.1));
}

void BM_McAverage(benchmark::State& state) {
    const AtomChain base = build_periodic_chain(100, 0.5, symmetric_atom());
    DisorderSpec spec;
    spec.target = DisorderTarget::Position;
    spec.sigma = 1.0;
    spec.realizations = state.range(0);
    const PhotonQuery q{2.0};
    const WaveguideConfig wg = symmetric_wg();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mc_average(base, spec, q, wg, Observable::LogTransmission, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanBands(benchmark::State& state) {
    const WaveguideConfig wg = symmetric_wg();
    const Atom atom = symmetric_atom();
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_bands(0.3, 3.0, state.range(0), wg, atom, 0.5));
}

}  // namespace

BENCHMARK(BM_ChiralTransmission)->Arg(10)->Arg(100)->Arg(1000)->Complexity();
BENCHMARK(BM_ChainScattering)->Arg(10)->Arg(100)->Arg(1000)->Complexity();
BENCHMARK(BM_DenseOracle)->Arg(5)->Arg(10)->Arg(20)->Complexity();
BENCHMARK(BM_AvgTauSquared);
BENCHMARK(BM_LocalizationLengthChiral);
BENCHMARK(BM_McAverage)->Arg(100)->Arg(1000);
BENCHMARK(BM_ScanBands)->Arg(501)->Arg(2001);

BENCHMARK_MAIN();
