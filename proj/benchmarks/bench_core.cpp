#include <benchmark/benchmark.h>

#include "bishop/croper.hpp"
#include "bishop/examples.hpp"
#include "bishop/locus.hpp"
#include "bishop/topo.hpp"

using namespace bishop;

static void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_expr("zb*(1-w)^4/(1-wb) + 0.5*zb^2*w - i*z*wb^3"));
}
BENCHMARK(BM_Parse);

static void BM_GammaAt(benchmark::State& state) {
  const RatExpr f = parse_expr("zb*wb + 2*wb^2");
  const GammaParts parts = gamma_parts(f);
  const RatExpr b = b_function(f);
  const SpherePoint p{1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(gamma_at(parts, b, p));
}
BENCHMARK(BM_GammaAt);

static void BM_Refine(benchmark::State& state) {
  const LocusEquation eq(b_function(build_example({ExampleId::ex5})));
  const LocusParams params;
  const auto starts = sample_sphere(256, 3);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(refine_to_locus(eq, starts[k++ % starts.size()], params));
}
BENCHMARK(BM_Refine);

static void BM_FindComponents(benchmark::State& state) {
  const RatExpr f = build_example({ExampleId::ex1});
  LocusParams params;
  params.sample_count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_components(f, params));
}
BENCHMARK(BM_FindComponents)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_Linking(benchmark::State& state) {
  const LocusResult r = find_components(build_example({ExampleId::ex5}));
  const SpherePoint pole = select_pole(r.components);
  const auto a = project_component(r.components.at(0), pole);
  const auto b = project_component(r.components.at(1), pole);
  for (auto _ : state) benchmark::DoNotOptimize(linking_number(a, b));
}
BENCHMARK(BM_Linking)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
