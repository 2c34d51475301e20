// Microbenchmarks for the hot paths: closed-form propagator evaluation vs the
// exact oracle engines, plus the entanglement snapshot pipeline.
//
//   cmake --build build && ./build/benchmarks/spinstar_bench

#include <benchmark/benchmark.h>

#include "spinstar/closedform.hpp"
#include "spinstar/entanglement.hpp"
#include "spinstar/oracle.hpp"
#include "spinstar/renorm.hpp"

namespace {

using namespace spinstar;

SpinStarSystem make_system(int M, double Gamma = 0.0, double kappa = 0.0) {
    return build_topology({Topology::nearest_neighbor, 1.0, 0.0}, M, 1.0, Gamma,
                          kappa);
}

void BM_PropagatorsUnitary(benchmark::State& state) {
    const CollectiveParams params = collective_params(make_system(10));
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        benchmark::DoNotOptimize(propagators_unitary(params, t));
    }
}
BENCHMARK(BM_PropagatorsUnitary);

void BM_PropagatorsDissipative(benchmark::State& state) {
    const CollectiveParams params =
        collective_params(make_system(10, 0.1, 0.2));
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        benchmark::DoNotOptimize(propagators_dissipative(params, t));
    }
}
BENCHMARK(BM_PropagatorsDissipative);

void BM_CollectiveSeries(benchmark::State& state) {
    const CollectiveParams params = collective_params(make_system(10));
    const auto times = linspace(0.0, 20.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evolve_collective_series(params, 0.0, 1.0, times, false));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CollectiveSeries)->Arg(201)->Arg(2001);

void BM_SectorEvolveHermitian(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const SpinStarSystem system = make_system(M);
    const auto times = linspace(0.0, 20.0, 201);
    const Eigen::VectorXcd psi0 = embed_single_excitation(center_excitation(M));
    for (auto _ : state) {
        const SubspaceHamiltonian H = build_subspace_hamiltonian(system, 1);
        benchmark::DoNotOptimize(evolve_exact(H, psi0, times));
    }
}
BENCHMARK(BM_SectorEvolveHermitian)->Arg(4)->Arg(8)->Arg(12)->Arg(32);

void BM_SectorEvolveConditional(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const SpinStarSystem system = make_system(M, 0.1, 0.2);
    const auto times = linspace(0.0, 20.0, 201);
    const Eigen::VectorXcd psi0 = embed_single_excitation(center_excitation(M));
    for (auto _ : state) {
        const SubspaceHamiltonian H = build_subspace_hamiltonian(system, 1, true);
        benchmark::DoNotOptimize(evolve_exact(H, psi0, times));
    }
}
BENCHMARK(BM_SectorEvolveConditional)->Arg(4)->Arg(8)->Arg(12);

void BM_FullSpaceEvolve(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const SpinStarSystem system = make_system(M);
    const auto times = linspace(0.0, 10.0, 41);
    const Eigen::VectorXcd psi0 = embed_in_full_space(uniform_bath(M));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_full_space(system, psi0, times));
    }
}
BENCHMARK(BM_FullSpaceEvolve)->Arg(4)->Arg(6)->Arg(8);

void BM_EntanglementSnapshot(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const AmplitudeState w = uniform_bath(M);
    for (auto _ : state) {
        benchmark::DoNotOptimize(entanglement_snapshot(w));
    }
}
BENCHMARK(BM_EntanglementSnapshot)->Arg(8)->Arg(32);

void BM_EquivalenceReport(benchmark::State& state) {
    const SpinStarSystem system = make_system(10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            verify_equivalence(system, 2, 0.0, 1.0, 20.0, 2001));
    }
}
BENCHMARK(BM_EquivalenceReport);

} // namespace

BENCHMARK_MAIN();
