#include <benchmark/benchmark.h>

#include <memory>

#include "gammamaps/kernel_maps.hpp"
#include "gammamaps/mu_gamma.hpp"
#include "gammamaps/np_reduction.hpp"
#include "gammamaps/schur_realization.hpp"
#include "gammamaps/uw_right_s.hpp"

namespace {

using namespace gammamaps;

void BM_MuThreeScalar(benchmark::State& state) {
    const CMatrix a = random_schur(3, 2, 11)(Complex(0.3, 0.2));
    MuOptions opts;
    opts.phase_grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mu(a, BlockStructure::three_scalar(), opts));
}
BENCHMARK(BM_MuThreeScalar)->Arg(90)->Arg(180)->Arg(720)->Unit(benchmark::kMillisecond);

void BM_MuOneTwo(benchmark::State& state) {
    const CMatrix a = random_schur(3, 2, 12)(Complex(0.3, 0.2));
    for (auto _ : state) benchmark::DoNotOptimize(mu(a, BlockStructure::one_two()));
}
BENCHMARK(BM_MuOneTwo)->Unit(benchmark::kMicrosecond);

void BM_UpperEThenUW(benchmark::State& state) {
    const auto f = random_schur(3, 4, 13);
    const auto grid = std::make_shared<const SampleGrid>(SampleGrid::with_size(static_cast<int>(state.range(0)), 13));
    for (auto _ : state) benchmark::DoNotOptimize(uw_construct(upper_e(f, grid)).state_dim);
}
BENCHMARK(BM_UpperEThenUW)->Arg(16)->Arg(64)->Arg(144)->Unit(benchmark::kMillisecond);

void BM_SliceSchur(benchmark::State& state) {
    const auto curve = gamma_curve_from_realization(random_schur(3, 2, 14, 0.9), GammaVariant::Gamma7);
    SliceOptions opts;
    opts.n_boundary = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_slice_schur(curve, Complex(0.3, -0.2), opts).max_norm);
}
BENCHMARK(BM_SliceSchur)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
