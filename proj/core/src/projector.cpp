#include "commscale/projector.hpp"

#include <algorithm>
#include <cmath>

#include "commscale/analytic.hpp"
#include "commscale/errors.hpp"
#include "commscale/format.hpp"
#include "json_codec.hpp"

namespace commscale {
namespace {

void require_time(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidationError(std::string(what) + " must be a finite non-negative time, got " +
                          format_double(t));
  }
}

}  // namespace

IterationBreakdown make_breakdown(double compute_time, double backprop_compute_time,
                                  double serialized_comm_time, double dp_comm_time) {
  require_time(compute_time, "compute_time");
  require_time(backprop_compute_time, "backprop_compute_time");
  require_time(serialized_comm_time, "serialized_comm_time");
  require_time(dp_comm_time, "dp_comm_time");

  IterationBreakdown b;
  b.compute_time = compute_time;
  b.backprop_compute_time = backprop_compute_time;
  b.serialized_comm_time = serialized_comm_time;
  b.dp_comm_time = dp_comm_time;
  b.exposed_dp_time = std::max(0.0, dp_comm_time - backprop_compute_time);
  // Remainder; hidden + exposed == dp_comm_time exactly.
  b.overlapped_hidden_time = dp_comm_time - b.exposed_dp_time;
  b.critical_path = compute_time + serialized_comm_time + b.exposed_dp_time;
  if (b.critical_path > 0.0) {
    b.frac_compute = compute_time / b.critical_path;
    b.frac_serial = serialized_comm_time / b.critical_path;
    b.frac_exposed = b.exposed_dp_time / b.critical_path;
    b.frac_hidden = b.overlapped_hidden_time / b.critical_path;
  }
  return b;
}

IterationBreakdown project_iteration(const TransformerConfig& cfg, const ParallelismConfig& par,
                                     const CostModel& costs) {
  validate(cfg);
  validate(par);
  validate_pairing(cfg, par);
  if (!costs.can_price(OperatorKind::kGemm)) {
    throw PricingError("cost model cannot price gemm");
  }

  double forward = 0.0;
  for (const auto& gemm : forward_gemms(cfg, par)) {
    forward += project_time(costs, OperatorKind::kGemm, static_cast<double>(gemm.ops()));
  }
  // Weight-gradient and input-gradient GEMMs each match the forward GEMM's size.
  const double backward = 2.0 * forward;

  const auto bytes = serialized_ar_bytes(cfg, par);
  double serialized = 0.0;
  if (par.tp_degree > 1) {
    serialized = bytes.serialized_ar_count *
                 allreduce_time(costs, static_cast<double>(bytes.serialized_bytes_per_ar),
                                par.tp_degree);
  }
  double dp = 0.0;
  if (par.dp_degree > 1) {
    dp = allreduce_time(costs, static_cast<double>(bytes.dp_fc_weight_bytes), par.dp_degree) *
         par.dp_comm_slowdown;
  }

  const auto layers = static_cast<double>(cfg.num_layers);
  return make_breakdown(layers * (forward + backward), layers * backward, layers * serialized,
                        layers * dp);
}

double serialized_fraction(const IterationBreakdown& b) {
  if (!(b.critical_path > 0.0)) {
    throw ValidationError("serialized fraction undefined for a zero critical path");
  }
  return b.serialized_comm_time / b.critical_path;
}

double overlap_percentage(const IterationBreakdown& b) {
  if (!(b.backprop_compute_time > 0.0)) {
    throw ValidationError("overlap percentage undefined without backprop compute time");
  }
  return 100.0 * b.dp_comm_time / b.backprop_compute_time;
}

IterationBreakdown apply_flop_vs_bw(const IterationBreakdown& b, double f) {
  if (!std::isfinite(f) || f < 1.0) {
    throw ValidationError("flop-vs-bw scale must be >= 1, got " + format_double(f));
  }
  if (f == 1.0) return b;
  return make_breakdown(b.compute_time / f, b.backprop_compute_time / f, b.serialized_comm_time,
                        b.dp_comm_time);
}

IterationBreakdown combined_breakdown(const TransformerConfig& cfg, const ParallelismConfig& par,
                                      const CostModel& costs, double f, double dp_slowdown) {
  ParallelismConfig slowed = par;
  slowed.dp_comm_slowdown = dp_slowdown;
  validate(slowed);
  return apply_flop_vs_bw(project_iteration(cfg, slowed, costs), f);
}

std::string to_json(const IterationBreakdown& b) {
  detail::json out = detail::json::object();
  out["compute_s"] = b.compute_time;
  out["backprop_compute_s"] = b.backprop_compute_time;
  out["serial_comm_s"] = b.serialized_comm_time;
  out["dp_comm_s"] = b.dp_comm_time;
  out["hidden_s"] = b.overlapped_hidden_time;
  out["exposed_s"] = b.exposed_dp_time;
  out["critical_path_s"] = b.critical_path;
  out["frac_compute"] = b.frac_compute;
  out["frac_serial"] = b.frac_serial;
  out["frac_exposed"] = b.frac_exposed;
  out["frac_hidden"] = b.frac_hidden;
  return out.dump(2);
}

}  // namespace commscale
