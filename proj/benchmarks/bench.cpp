#include <benchmark/benchmark.h>

#include <random>

#include "ecii/enrich.hpp"
#include "ecii/induce.hpp"
#include "ecii/io.hpp"
#include "ecii/synthetic.hpp"

using namespace ecii;

namespace {

void BM_BitsetIntersectCount(benchmark::State& state) {
  std::size_t bits = static_cast<std::size_t>(state.range(0));
  DynamicBitset a(bits), b(bits);
  std::mt19937 rng(1);
  for (std::size_t i = 0; i < bits; i += 1 + rng() % 7) a.set(i);
  for (std::size_t i = 0; i < bits; i += 1 + rng() % 5) b.set(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(DynamicBitset::count_and(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BitsetIntersectCount)->Range(1 << 8, 1 << 18)->Complexity(benchmark::oN);

void BM_Materialize(benchmark::State& state) {
  SyntheticProblem problem = make_family_problem(static_cast<std::size_t>(state.range(0)), 1234);
  for (auto _ : state) {
    InvocationCounter counter;
    Materialization m = materialize(problem.kb, {}, counter);
    benchmark::DoNotOptimize(m.individual_count());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Materialize)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  SyntheticProblem problem = make_family_problem(100, 1234);
  int budget = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto result = enumerate_expressions(problem.kb, budget, budget);
    benchmark::DoNotOptimize(result.exprs.size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Induction(benchmark::State& state) {
  SyntheticProblem problem = make_family_problem(static_cast<std::size_t>(state.range(0)), 1234);
  ExampleSet examples = ExampleSet::from_kb(problem.kb, problem.positives, problem.negatives);
  JobConfig cfg;
  cfg.max_solutions = 5;
  for (auto _ : state) {
    ResultReport report = run_induction(problem.kb, examples, cfg);
    benchmark::DoNotOptimize(report.rows.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Induction)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
