#include "qcorr/bell_diagonal.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qse.hpp"
#include "qcorr/random.hpp"
#include "qcorr/steering.hpp"

#include <benchmark/benchmark.h>

using namespace qcorr;

namespace {

const std::vector<Vec3> kXY{Vec3::UnitX(), Vec3::UnitY()};

void BM_ClassicalCorrelation(benchmark::State& state) {
    Rng rng(1);
    const DensityMatrix rho = random_state(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(classical_correlation(rho).value);
}
BENCHMARK(BM_ClassicalCorrelation)->Unit(benchmark::kMillisecond);

void BM_ScmubProfile(benchmark::State& state) {
    const DensityMatrix rho = catalog_state("giorgi_n3");
    for (auto _ : state)
        benchmark::DoNotOptimize(scmub_profile(rho).q3);
}
BENCHMARK(BM_ScmubProfile)->Unit(benchmark::kMillisecond);

void BM_SteeringEllipsoid(benchmark::State& state) {
    Rng rng(2);
    const DensityMatrix rho = random_state(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(steering_ellipsoid(rho).semi_axes);
}
BENCHMARK(BM_SteeringEllipsoid);

void BM_LhsFeasibility(benchmark::State& state) {
    const NoSignalingBox box = bb84_box(static_cast<double>(state.range(0)) / 100.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(lhs_feasibility_1sdi(box, kXY).feasible);
}
BENCHMARK(BM_LhsFeasibility)->Arg(50)->Arg(70)->Arg(72)->Arg(90)->Unit(benchmark::kMicrosecond);

void BM_LhvLhsSearch(benchmark::State& state) {
    const NoSignalingBox box = bb84_box(0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(lhvlhs_search_1ssdi(box, kXY).best_residual);
}
BENCHMARK(BM_LhvLhsSearch)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_SchrodingerStrengthBox(benchmark::State& state) {
    const NoSignalingBox box = box_from_directions(bd_compose(Vec3(0.5, 0.3, 0.1)), kXY, kXY);
    for (auto _ : state)
        benchmark::DoNotOptimize(schrodinger_strength_box(box, kXY).value);
}
BENCHMARK(BM_SchrodingerStrengthBox)->Unit(benchmark::kMicrosecond);

void BM_SchrodingerStrengthState(benchmark::State& state) {
    const DensityMatrix rho = bd_compose(Vec3(0.5, 0.3, 0.1));
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(schrodinger_strength_state(rho, n).value);
}
BENCHMARK(BM_SchrodingerStrengthState)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
