#pragma once

// Whole-iteration projection: per-layer GEMM and all-reduce sizes priced by a
// CostModel and summed over layers.
//
// Critical path = compute + serialized (TP) all-reduces + the exposed part of
// the data-parallel all-reduce. DP communication overlaps the backward GEMMs
// in aggregate; whatever exceeds them is exposed.

#include <string>

#include "commscale/cost_model.hpp"
#include "commscale/types.hpp"

namespace commscale {

struct IterationBreakdown {
  double compute_time = 0.0;           // forward + backward GEMMs, all layers
  double backprop_compute_time = 0.0;  // backward portion of compute_time
  double serialized_comm_time = 0.0;   // TP all-reduces
  double dp_comm_time = 0.0;           // DP weight-gradient all-reduces, after slowdown
  double overlapped_hidden_time = 0.0;
  double exposed_dp_time = 0.0;
  double critical_path = 0.0;
  double frac_compute = 0.0;
  double frac_serial = 0.0;
  double frac_exposed = 0.0;
  // Hidden DP time relative to the critical path. Not part of the closure
  // frac_compute + frac_serial + frac_exposed = 1.
  double frac_hidden = 0.0;

  bool operator==(const IterationBreakdown&) const = default;
};

// Fills overlap, exposure, critical path and fractions from the four primary
// times. Throws ValidationError for negative or non-finite inputs.
IterationBreakdown make_breakdown(double compute_time, double backprop_compute_time,
                                  double serialized_comm_time, double dp_comm_time);

// Per layer: forward GEMMs plus 2x each for the weight- and input-gradient
// GEMMs; 4 serialized all-reduces over N = TP (none when TP = 1); one FC
// weight-gradient all-reduce over N = DP (none when DP = 1), times
// par.dp_comm_slowdown.
IterationBreakdown project_iteration(const TransformerConfig& cfg, const ParallelismConfig& par,
                                     const CostModel& costs);

// serialized / critical path. Throws ValidationError on a zero critical path.
double serialized_fraction(const IterationBreakdown& b);

// 100 * dp_comm / backprop compute; above 100 the excess is exposed.
// Throws ValidationError when there is no backprop compute.
double overlap_percentage(const IterationBreakdown& b);

// Compute scaled down by f, communication untouched. Throws ValidationError for f < 1.
IterationBreakdown apply_flop_vs_bw(const IterationBreakdown& b, double f);

// project_iteration with dp_slowdown replacing par.dp_comm_slowdown, then
// apply_flop_vs_bw(f).
IterationBreakdown combined_breakdown(const TransformerConfig& cfg, const ParallelismConfig& par,
                                      const CostModel& costs, double f, double dp_slowdown);

// Stable schema: every field above, times in seconds.
std::string to_json(const IterationBreakdown& b);

}  // namespace commscale
