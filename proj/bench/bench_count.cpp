// Serial reference kernel vs the OpenMP kernel vs the naive reference count.

#include <benchmark/benchmark.h>

#include "sscurve/builder.hpp"
#include "sscurve/count_kernels.hpp"
#include "sscurve/decomp.hpp"
#include "sscurve/zeta.hpp"

using namespace sscurve;

namespace {

const CurveSpec& curve221() {
  static const CurveSpec c = build_prime_field(decompose(221));
  return c;
}

void BM_CountSerial(benchmark::State& state) {
  const CountPlan plan = make_plan(curve221(), static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_hits_serial(plan, 0, plan.field.size()));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * plan.field.size()));
}

void BM_CountParallel(benchmark::State& state) {
  const CountPlan plan = make_plan(curve221(), static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_hits_parallel(plan));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * plan.field.size()));
}

void BM_CountReference(benchmark::State& state) {
  const unsigned k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_points_reference(curve221(), k));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) << k);
}

}  // namespace

BENCHMARK(BM_CountSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountParallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountReference)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
