#include <benchmark/benchmark.h>

#include "bqscat/evolve.hpp"
#include "bqscat/oracle.hpp"
#include "bqscat/rhverify.hpp"
#include "bqscat/spectral.hpp"

using namespace bqscat;

namespace {

const OracleDataset& dataset() {
    static const OracleDataset ds = wavepacket_dataset(WavepacketSpec{});
    return ds;
}

SpectralCache& cache() {
    static SpectralCache sc(dataset().init, dataset().bnd);
    return sc;
}

SectionalM& sectional() {
    static SectionalM sm(dataset().grid, cache());
    return sm;
}

void bm_eigenfunction_solve(benchmark::State& state) {
    const SpectralPoint p = make_point(std::polar(1.0, 0.9));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_mu3(dataset().init, p, 0.0));
}
BENCHMARK(bm_eigenfunction_solve);

void bm_spectral_matrices(benchmark::State& state) {
    for (auto _ : state) {
        SpectralMatrices m =
            spectral_functions(dataset().init, dataset().bnd, std::polar(1.0, 1.3));
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(bm_spectral_matrices);

void bm_sectional_solution(benchmark::State& state) {
    SectionalM sm(dataset().grid, cache());
    for (auto _ : state)
        benchmark::DoNotOptimize(sm.build_M(1.0, 0.5, cplx(2.0, 0.3)));
}
BENCHMARK(bm_sectional_solution);

void bm_jump_residual(benchmark::State& state) {
    SectionalM& sm = sectional();
    const ContourPiece pc = piece(PieceKind::Ray, 1);
    const cplx k = sample_piece(pc, 1, 3.0)[0];
    for (auto _ : state)
        benchmark::DoNotOptimize(sm.jump_residual(1.0, 0.5, pc, k));
}
BENCHMARK(bm_jump_residual);

void bm_field_recovery(benchmark::State& state) {
    for (auto _ : state) {
        SectionalM sm(dataset().grid, cache());
        benchmark::DoNotOptimize(sm.recover_u(1.0, 0.5));
    }
}
BENCHMARK(bm_field_recovery);

} // namespace

int main(int argc, char** argv) {
    // Build the shared dataset and caches before timing starts.
    (void)sectional().build_M(1.0, 0.5, cplx(2.0, 0.3));
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
