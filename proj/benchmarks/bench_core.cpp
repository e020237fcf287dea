#include <benchmark/benchmark.h>

#include "ncchaos/diagnostics.hpp"
#include "ncchaos/freelaw.hpp"
#include "ncchaos/kernel.hpp"
#include "ncchaos/ncpart.hpp"
#include "ncchaos/sum_moment.hpp"
#include "ncchaos/words.hpp"

using namespace ncchaos;

static void BM_EnumerateNC(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        long long count = 0;
        for_each_nc(n, [&](const auto&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumerateNC)->DenseRange(6, 12, 2)->Complexity();

static void BM_Contract(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    Kernel f = kernel_family("example2", N);
    for (auto _ : state) {
        Kernel g = contract(f, 1);
        benchmark::DoNotOptimize(g.nnz());
    }
}
BENCHMARK(BM_Contract)->RangeMultiplier(2)->Range(8, 64);

static void BM_WordMoment(benchmark::State& state) {
    VariableFamily fam = VariableFamily::iid(free_poisson_centered(1), 4);
    Word w = Word::plain({0, 1, 2, 3, 3, 2, 1, 0, 0, 1, 1, 0});
    for (auto _ : state) {
        MomentValue v = word_moment(fam, w);
        benchmark::DoNotOptimize(v.value_d);
    }
}
BENCHMARK(BM_WordMoment);

static void BM_SumFourthMoment(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    ChebyshevSumSpec spec(kernel_family("example2", N), {1, 1});
    FreeLaw s = semicircular(1);
    SumMomentOptions opts;
    opts.threads = 1;
    for (auto _ : state) {
        SumMomentResult r = sum_joint_moment({{spec, 4}}, s, opts);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_SumFourthMoment)->DenseRange(4, 7, 1)->Unit(benchmark::kMillisecond);

static void BM_CsPlan(benchmark::State& state) {
    for (auto _ : state) {
        ExponentPlan plan = iterated_cs_plan(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(plan.sets.size());
    }
}
BENCHMARK(BM_CsPlan)->DenseRange(4, 12, 4);

BENCHMARK_MAIN();
