#include "cmx/arrangement.hpp"
#include "cmx/cells.hpp"
#include "cmx/center.hpp"

#include <benchmark/benchmark.h>

using namespace cmx;

namespace {

AlgPtr algebra(const std::string& name) { return make_algebra(ReflectionGroup::build(find_group(name))); }

// the fundamental invariant with the most mixed bidegree
MPoly top_invariant(const AlgPtr& a) {
    auto sys = fundamental_invariants(a);
    auto mix = [&](size_t i) { return sys.bidegrees[i].first * sys.bidegrees[i].second; };
    size_t best = 0;
    for (size_t i = 1; i < sys.gens.size(); ++i)
        if (mix(i) > mix(best)) best = i;
    return sys.gens[best];
}

void BM_TruncInverse(benchmark::State& st, const char* name, bool parallel) {
    auto a = algebra(name);
    MPoly f = top_invariant(a);
    TruncOptions opt;
    opt.parallel = parallel;
    for (auto _ : st) benchmark::DoNotOptimize(parallel ? trunc_inverse(a, f, opt) : trunc_inverse_serial(a, f, opt));
}
BENCHMARK_CAPTURE(BM_TruncInverse, B2_serial, "B2", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TruncInverse, B2_parallel, "B2", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TruncInverse, G4_serial, "G4", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TruncInverse, G4_parallel, "G4", true)->Unit(benchmark::kMillisecond);

void BM_Presentation(benchmark::State& st, const char* name) {
    auto a = algebra(name);
    for (auto _ : st) {
        Center z(a);
        benchmark::DoNotOptimize(z.presentation());
    }
}
BENCHMARK_CAPTURE(BM_Presentation, B2, "B2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Presentation, dih10, "dih10")->Unit(benchmark::kMillisecond);

void BM_Cellular(benchmark::State& st, const char* name, const char* at) {
    auto g = ReflectionGroup::build(find_group(name));
    auto p = ParamPoint::parse(*g, at);
    uint64_t seed = 0;
    for (auto _ : st) benchmark::DoNotOptimize(cellular_characters(*g, p, seed++));
}
BENCHMARK_CAPTURE(BM_Cellular, B2, "B2", "k1=1,k2=1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Cellular, G4, "G4", "k1=1,k2=1")->Unit(benchmark::kMillisecond);

void BM_Poincare(benchmark::State& st) {
    auto a = RealArrangement::load(arrangements_dir() + "/G28.json");
    for (auto _ : st) benchmark::DoNotOptimize(poincare_polynomial(a));
}
BENCHMARK(BM_Poincare);

}  // namespace

BENCHMARK_MAIN();
