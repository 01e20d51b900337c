#include <benchmark/benchmark.h>

#include "commscale/commscale.hpp"

using namespace commscale;

static void BM_LayerOps(benchmark::State& state) {
  TransformerConfig cfg;
  cfg.hidden = 16384;
  cfg.seq_len = 2048;
  cfg.batch = 4;
  ParallelismConfig par;
  par.tp_degree = 64;
  for (auto _ : state) benchmark::DoNotOptimize(layer_compute_ops(cfg, par));
}
BENCHMARK(BM_LayerOps);

static void BM_ProjectIteration(benchmark::State& state) {
  const auto cfg = case_study_config();
  const auto& costs = reference_cost_model();
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_iteration(cfg.model, cfg.parallelism, costs));
  }
}
BENCHMARK(BM_ProjectIteration);

static void BM_Table3Sweep(benchmark::State& state) {
  auto spec = SweepSpec::table3_defaults();
  spec.f_values = {1.0, 2.0, 4.0};
  const auto grid = build_grid(spec).cases;
  const auto& costs = reference_cost_model();
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(grid, costs, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_Table3Sweep)->Arg(1)->Arg(4);

static void BM_Table3Csv(benchmark::State& state) {
  const auto table = run_sweep(build_grid(SweepSpec::table3_defaults()).cases,
                               CostModel::roofline(reference_hardware()));
  for (auto _ : state) benchmark::DoNotOptimize(emit_table(table, ReportFormat::kCsv));
}
BENCHMARK(BM_Table3Csv);

BENCHMARK_MAIN();
