// Serial reference vs OpenMP path for the parallel kernels. Arg 0 = serial,
// arg 1 = parallel (thread count from HULLSCOPE_THREADS / OpenMP defaults).
#include <benchmark/benchmark.h>

#include "hullscope/bishop.hpp"
#include "hullscope/curve.hpp"
#include "hullscope/extremal.hpp"
#include "hullscope/green.hpp"
#include "hullscope/measure.hpp"
#include "hullscope/parallel.hpp"

using namespace hullscope;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

CurveC2 cubic() { return CurveC2({{LaurentPoly::monomial(1, 1.0), LaurentPoly(1, {0.2, 0.0, 1.0})}}); }

void BM_SublevelMeasure(benchmark::State& state) {
  const SublevelSet set = sublevel_set(UnivariatePoly({cx(0.1), cx(-0.3, 0.2), cx(0.0), cx(1.0)}), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(sublevel_measure(set, 1'000'000, 7, exec_of(state)));
}

void BM_HullSlice(benchmark::State& state) {
  const CurveC2 circle({{LaurentPoly::monomial(1, 1.0), LaurentPoly()}});
  SliceSpec spec;
  spec.region = {-1.5, 1.5, -1.5, 1.5};
  SliceOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(hull_slice(circle, 1.5, spec, 32, 4, opt));
}

void BM_CheckSimple(benchmark::State& state) {
  const CurveC2 c = cubic();
  for (auto _ : state) benchmark::DoNotOptimize(check_simple(c, 4096, 1e-9, exec_of(state)));
}

void BM_DecayTable(benchmark::State& state) {
  const CurveC2 c = cubic();
  const GreenRate rate = green_rate(DomainSpec::disk(2.0), 0.0);
  DecayOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(decay_table(c, 0.0, {3, 4, 5, 6, 7, 8, 9}, {3}, rate, opt));
}

}  // namespace

BENCHMARK(BM_SublevelMeasure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HullSlice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckSimple)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecayTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
