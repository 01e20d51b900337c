#pragma once

// Closed-form per-layer cost algebra for a tensor- and data-parallel
// Transformer layer. Only the dominant GEMMs count as compute (non-GEMM ops
// are assumed fused); a multiply-add counts as two operations.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "commscale/types.hpp"
#include "commscale/zoo.hpp"

namespace commscale {

using OpCount = std::uint64_t;
using ByteCount = std::uint64_t;

// Every count below throws ValidationError when H mod TP != 0 or when the
// exact result would overflow 64 bits.

// 2 * ffn_mult * H * (H/TP) * SL * B
OpCount fc_gemm_ops(std::uint64_t hidden, std::uint64_t seq_len, std::uint64_t batch,
                    std::uint64_t tp, std::uint64_t ffn_mult = 4);
// 2 * (H/TP) * SL * SL * B
OpCount attention_gemm_ops(std::uint64_t hidden, std::uint64_t seq_len, std::uint64_t batch,
                           std::uint64_t tp);
// 3 * 2 * (H/TP) * H * SL * B  (the Q, K and V projections)
OpCount linear_gemm_ops(std::uint64_t hidden, std::uint64_t seq_len, std::uint64_t batch,
                        std::uint64_t tp);

struct LayerOpCounts {
  OpCount fc_ops = 0;
  OpCount attn_ops = 0;
  OpCount linear_ops = 0;
  OpCount total_fwd_ops = 0;
  // FC weight-gradient + input-gradient GEMMs.
  OpCount bp_fc_ops = 0;

  bool operator==(const LayerOpCounts&) const = default;
};

LayerOpCounts layer_compute_ops(const TransformerConfig& cfg, const ParallelismConfig& par);

// 4 * ffn_mult * H * (H/TP) * SL * B
OpCount backprop_fc_ops(const TransformerConfig& cfg, const ParallelismConfig& par);

struct LayerCommBytes {
  std::uint32_t serialized_ar_count = 4;
  ByteCount serialized_bytes_per_ar = 0;  // (p/8) * H * SL * B
  ByteCount serialized_bytes_total = 0;   // 4 * per-AR
  ByteCount dp_fc_weight_bytes = 0;       // (p/8) * ffn_mult * H * (H/TP)

  bool operator==(const LayerCommBytes&) const = default;
};

LayerCommBytes serialized_ar_bytes(const TransformerConfig& cfg, const ParallelismConfig& par);

struct EdgeSlack {
  double edge_ratio = 0.0;   // forward ops per serialized byte
  double slack_ratio = 0.0;  // FC backprop ops per DP weight-gradient byte
};

// total_fwd_ops / serialized_bytes_total; 4(7H + SL)/(p TP) for ffn_mult = 4.
double amdahl_edge(const TransformerConfig& cfg, const ParallelismConfig& par);
// bp_fc_ops / dp_fc_weight_bytes = 32 SL B / p.
double slack_advantage(const TransformerConfig& cfg, const ParallelismConfig& par);
EdgeSlack edge_slack(const TransformerConfig& cfg, const ParallelismConfig& par);

enum class TpRounding { kCeil, kNextPow2 };

struct TpEstimate {
  double raw = 0.0;
  std::uint64_t tp = 0;
};

inline constexpr double kBaseParamCount = 3.9e9;  // first TP=8 deployment
inline constexpr double kBaseTp = 8.0;

// base_tp * (param_count / base_param_count) / mem_capacity_scale, rounded.
// Throws ValidationError on non-positive or non-finite input.
TpEstimate estimate_tp(double param_count, double mem_capacity_scale,
                       TpRounding rounding = TpRounding::kCeil,
                       double base_param_count = kBaseParamCount, double base_tp = kBaseTp);

// H * SL, the activation-memory growth proxy.
std::uint64_t memory_demand_proxy(const TransformerConfig& cfg);

// One GEMM kernel of a layer's forward pass. `batch` > 1 marks a batched
// kernel (attention scores); its size metric is 2*M*N*K*batch.
enum class Sublayer { kFc, kAttention, kLinear };

struct GemmShape {
  Sublayer sublayer = Sublayer::kFc;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t batch = 1;

  OpCount ops() const;
};

// FC (1 kernel), attention (1 batched kernel), Q/K/V projections (3 kernels).
// The ops sum to layer_compute_ops(cfg, par).total_fwd_ops.
std::vector<GemmShape> forward_gemms(const TransformerConfig& cfg, const ParallelismConfig& par);

struct TrendAssignment {
  std::uint64_t batch = 1;
  std::uint64_t tp = 1;
};

struct TrendPoint {
  std::string name;
  std::uint64_t batch = 1;
  std::uint64_t tp = 1;
  double slack_ratio = 0.0;
  double edge_ratio = 0.0;
  double normalized_slack = 0.0;  // relative to the first entry
  double normalized_edge = 0.0;
};

// Edge and slack for every zoo entry under the given per-model (B, TP),
// normalized to the first entry. Throws ValidationError when a model has no
// assignment or the assignment breaks H mod TP = 0.
std::vector<TrendPoint> trend_series(const ModelZoo& zoo,
                                     const std::map<std::string, TrendAssignment>& per_model);

// The (B, TP) assignments shipped with the tool: B shrinks to 1 and TP grows
// toward 128 as models scale.
const std::map<std::string, TrendAssignment>& reference_trend_assignments();

}  // namespace commscale
