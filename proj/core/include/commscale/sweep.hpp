#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commscale/cost_model.hpp"
#include "commscale/projector.hpp"
#include "commscale/types.hpp"

namespace commscale {

// One grid coordinate.
struct SweepPoint {
  std::uint64_t hidden = 0;
  std::uint64_t seq_len = 0;
  std::uint64_t batch = 0;
  std::uint64_t tp = 0;
  double flop_vs_bw = 1.0;

  bool operator==(const SweepPoint&) const = default;
};

using SweepFilter = std::function<bool(const SweepPoint&)>;

struct SweepSpec {
  std::vector<std::uint64_t> hidden_values;
  std::vector<std::uint64_t> seq_len_values;
  std::vector<std::uint64_t> batch_values;
  std::vector<std::uint64_t> tp_values;
  std::vector<double> f_values;

  // Held fixed across the grid.
  std::uint64_t dp_degree = 4;
  double dp_slowdown = 1.0;
  std::uint64_t num_layers = 1;
  std::uint64_t ffn_mult = 4;
  std::uint32_t precision_bits = 16;

  // A point is kept only if every filter accepts it.
  std::vector<SweepFilter> filters;

  // H 1K..64K, SL 1K..8K, B {1, 4}, TP 4..256 (powers of two), f {1}.
  static SweepSpec table3_defaults();
};

// Keeps only SL * B values in `products`.
SweepFilter seq_batch_product_filter(std::vector<std::uint64_t> products);

// Parses a sweep spec document; any omitted axis takes its Table 3 default.
//
//   {"H": [...], "SL": [...], "B": [...], "TP": [...], "f": [...],
//    "dp": 4, "dp_slowdown": 1, "num_layers": 1, "ffn_mult": 4,
//    "precision_bits": 16, "filters": {"sl_times_b": [4096]}}
//
// Throws ParseError for malformed input, ValidationError for empty axes or
// invalid fixed values.
SweepSpec load_sweep_spec(std::string_view document);

struct SweepCase {
  TransformerConfig model;
  ParallelismConfig parallelism;
  double flop_vs_bw = 1.0;

  SweepPoint point() const;
};

struct GridResult {
  std::vector<SweepCase> cases;
  // Non-empty when filtering removed every point. Not an error.
  std::string warning;
};

// Cartesian product in lexicographic (H, SL, B, TP, f) order. Pairs with
// H mod TP != 0 are dropped, as are points rejected by a filter. Throws
// ValidationError if any axis is empty.
GridResult build_grid(const SweepSpec& spec);

struct SweepRow {
  SweepCase input;
  std::optional<IterationBreakdown> breakdown;
  double edge_ratio = 0.0;
  double slack_ratio = 0.0;
  std::string error;  // empty when the row priced cleanly
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

// Evaluates every case with combined_breakdown. A failing row keeps its
// error message; the others are unaffected. Rows come back in grid order for
// any thread count (0 picks the hardware concurrency).
SweepTable run_sweep(const std::vector<SweepCase>& grid, const CostModel& costs,
                     unsigned threads = 1);

}  // namespace commscale
