#include <benchmark/benchmark.h>

#include "qbloch/integrators.hpp"
#include "qbloch/random.hpp"

using namespace qbloch;

namespace {

void BM_HermitianEig(benchmark::State& state)
{
    auto rng = sampling::trial_rng(3, 0);
    const Matrix h = sampling::random_hermitian(rng, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(2, 32);

void BM_StepUnitary(benchmark::State& state)
{
    auto rng = sampling::trial_rng(4, 0);
    const Matrix v = sampling::random_hermitian(rng, state.range(0));
    DensityMatrix rho = sampling::random_density(rng, state.range(0));
    for (auto _ : state) {
        rho = step_unitary(rho, v, 1e-2, 1.0);
        benchmark::DoNotOptimize(rho.data());
    }
}
BENCHMARK(BM_StepUnitary)->RangeMultiplier(2)->Range(2, 32);

void BM_Rk4LiouvilleStep(benchmark::State& state)
{
    auto rng = sampling::trial_rng(5, 0);
    const Matrix v = sampling::random_hermitian(rng, state.range(0));
    DensityMatrix rho = sampling::random_density(rng, state.range(0));
    const auto rhs = [&](double, const DensityMatrix& r) -> DensityMatrix { return liouville_rhs(v, r, 1.0); };
    for (auto _ : state) {
        rho = step_rk4(rhs, rho, 0.0, 1e-2);
        benchmark::DoNotOptimize(rho.data());
    }
}
BENCHMARK(BM_Rk4LiouvilleStep)->RangeMultiplier(2)->Range(2, 32);

void BM_SimulateTwoSpecies(benchmark::State& state)
{
    auto rng = sampling::trial_rng(6, 0);
    const Model model{ModelKind::two_species, sampling::random_two_species(rng, 2, 2)};
    const DensityMatrix rho0 = sampling::random_density(rng, 4);
    const FieldProfile field({Pulse{sampling::random_vec3(rng), 1.0, 0.0, GaussianEnvelope{0.5, 0.2}}});
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate(model, rho0, field, {Method::unitary_midpoint, 1e-3, 0.0, 1.0, 100}));
}
BENCHMARK(BM_SimulateTwoSpecies)->Unit(benchmark::kMillisecond);

} // namespace
