#include <benchmark/benchmark.h>

#include "qbloch/algebra.hpp"
#include "qbloch/random.hpp"

using namespace qbloch;
using namespace qbloch::algebra;

namespace {

// c_k c_l^dagger c_m c_n^dagger over n levels: the worst-ordered quartic word.
OperatorExpr quartic_word(Statistics stats, int levels)
{
    OperatorExpr e = OperatorExpr::scalar(stats, 1.0);
    for (int k = 0; k < 4; ++k) {
        const int level = k % levels;
        e = e * OperatorExpr::factor(stats, k % 2 ? create(Species::conduction, level)
                                                 : annihilate(Species::conduction, level));
    }
    return e;
}

void BM_NormalOrderQuartic(benchmark::State& state)
{
    const auto stats = state.range(0) ? Statistics::boson : Statistics::fermion;
    const OperatorExpr word = quartic_word(stats, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(normal_order(word));
}
BENCHMARK(BM_NormalOrderQuartic)->Arg(0)->Arg(1);

void BM_DeriveGeneratorOneSpecies(benchmark::State& state)
{
    auto rng = sampling::trial_rng(1, 0);
    const auto sys = sampling::random_one_species(rng, state.range(0));
    const Vec3c field = sampling::random_vec3(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(derive_generator(sys, field));
}
BENCHMARK(BM_DeriveGeneratorOneSpecies)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

void BM_DeriveGeneratorTwoSpecies(benchmark::State& state)
{
    auto rng = sampling::trial_rng(2, 0);
    const auto sys = sampling::random_two_species(rng, state.range(0), state.range(0));
    const Vec3c field = sampling::random_vec3(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(derive_generator(sys, field));
}
BENCHMARK(BM_DeriveGeneratorTwoSpecies)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

} // namespace
