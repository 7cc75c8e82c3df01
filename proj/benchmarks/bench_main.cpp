#include <benchmark/benchmark.h>

#include <vector>

#include "srk/increments.hpp"
#include "srk/integrate.hpp"
#include "srk/random.hpp"
#include "srk/weak_mc.hpp"

using namespace srk;

namespace {

void BM_An3d1Step(benchmark::State& state) {
  const auto problem = ex3();
  PathState s{0.0, {problem.sde.x0().begin(), problem.sde.x0().end()}};
  const std::vector<double> xi{0.3, -0.2, 1.1, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(s = srk_step(an3d1(), problem.sde, s, 1e-3, xi));
  }
}
BENCHMARK(BM_An3d1Step);

void BM_PathSimulator(benchmark::State& state) {
  const auto problem = ex1();
  const double h = 1.0 / static_cast<double>(state.range(0));
  PathSimulator sim(StepMethod::srk(an3d1()), problem.sde, h,
                    step_count(problem, h), IncrementPair{});
  std::uint64_t path = 0;
  for (auto _ : state) {
    PathStream stream(42, path++, 0);
    sim.run(stream);
    benchmark::DoNotOptimize(sim.final_state().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(step_count(problem, h)));
}
BENCHMARK(BM_PathSimulator)->Arg(1)->Arg(16);

void BM_Increment(benchmark::State& state) {
  const IncrementDistribution d(static_cast<IncrementKind>(state.range(0)));
  PathStream stream(1, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample(d, stream));
  state.SetLabel(d.name());
}
BENCHMARK(BM_Increment)->DenseRange(0, 4);

void BM_WeakError(benchmark::State& state) {
  McOptions o;
  o.paths = 1 << 16;
  o.threads = static_cast<unsigned>(state.range(0));
  const auto method = parse_method("an3d1");
  for (auto _ : state) benchmark::DoNotOptimize(weak_error(method, ex3(), 0.25, o).mu_hat);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(o.paths));
}
BENCHMARK(BM_WeakError)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
