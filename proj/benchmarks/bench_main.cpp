#include <benchmark/benchmark.h>

#include "ivcheck/feasibility.hpp"
#include "ivcheck/generator.hpp"
#include "ivcheck/graph.hpp"
#include "ivcheck/iv_test.hpp"
#include "ivcheck/scm.hpp"

namespace {

using namespace ivcheck;

ConditionalTable table_for(std::size_t levels, std::uint64_t seed) {
  return induced_conditional(random_instrumental_scm({levels, levels, levels, 16}, seed, false));
}

void BM_IvScore(benchmark::State& state) {
  const auto t = table_for(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(iv_score(t).score);
}
BENCHMARK(BM_IvScore)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_CheckFeasibility(benchmark::State& state) {
  const auto t = table_for(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(check_feasibility(t).feasible);
}
BENCHMARK(BM_CheckFeasibility)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const auto scm = random_instrumental_scm({3, 3, 3, 32}, 3, false);
  for (auto _ : state) benchmark::DoNotOptimize(sample(scm, static_cast<std::uint64_t>(state.range(0)), 4).total());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_BootstrapMargin(benchmark::State& state) {
  const auto counts = sample(random_instrumental_scm({2, 2, 2, 8}, 5, false), 10'000, 6);
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_margin(counts, 200, 0.95, 7).lower);
}
BENCHMARK(BM_BootstrapMargin)->Unit(benchmark::kMillisecond);

void BM_VerifyGenerator(benchmark::State& state) {
  const auto spec = GeneratorSpec::square();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        verify_generator(spec, spec.cdf, {0.25, 0.5, 0.75}, static_cast<std::size_t>(state.range(0)), 8)
            .max_deviation);
  }
}
BENCHMARK(BM_VerifyGenerator)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_ExclusionRestrictions(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> nodes;
  std::map<std::string, std::set<std::string>> parents;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back("V" + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) parents[nodes[i]].insert(nodes[j]);
  }
  const CausalGraph g(nodes, parents, {});
  for (auto _ : state) benchmark::DoNotOptimize(exclusion_restrictions(g).size());
}
BENCHMARK(BM_ExclusionRestrictions)->Arg(4)->Arg(8);

}  // namespace
BENCHMARK_MAIN();
