#include "commscale/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "commscale/errors.hpp"
#include "commscale/format.hpp"

namespace commscale {
namespace {

std::uint64_t checked_product(std::initializer_list<std::uint64_t> factors) {
  std::uint64_t acc = 1;
  for (auto f : factors) {
    if (__builtin_mul_overflow(acc, f, &acc)) {
      throw ValidationError("operation count overflows 64-bit integer range");
    }
  }
  return acc;
}

std::uint64_t checked_sum(std::initializer_list<std::uint64_t> terms) {
  std::uint64_t acc = 0;
  for (auto t : terms) {
    if (__builtin_add_overflow(acc, t, &acc)) {
      throw ValidationError("operation count overflows 64-bit integer range");
    }
  }
  return acc;
}

std::uint64_t slice(std::uint64_t hidden, std::uint64_t tp) {
  if (tp == 0 || hidden % tp != 0) {
    throw ValidationError("hidden size " + std::to_string(hidden) +
                          " is not divisible by TP degree " + std::to_string(tp));
  }
  return hidden / tp;
}

std::uint64_t bytes_per_element(std::uint32_t precision_bits) {
  if (precision_bits == 0 || precision_bits % 8 != 0) {
    throw ValidationError("precision_bits must be a multiple of 8, got " +
                          std::to_string(precision_bits));
  }
  return precision_bits / 8;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

OpCount fc_gemm_ops(std::uint64_t hidden, std::uint64_t seq_len, std::uint64_t batch,
                    std::uint64_t tp, std::uint64_t ffn_mult) {
  return checked_product({2, ffn_mult, hidden, slice(hidden, tp), seq_len, batch});
}

OpCount attention_gemm_ops(std::uint64_t hidden, std::uint64_t seq_len, std::uint64_t batch,
                           std::uint64_t tp) {
  return checked_product({2, slice(hidden, tp), seq_len, seq_len, batch});
}

OpCount linear_gemm_ops(std::uint64_t hidden, std::uint64_t seq_len, std::uint64_t batch,
                        std::uint64_t tp) {
  return checked_product({3, 2, slice(hidden, tp), hidden, seq_len, batch});
}

LayerOpCounts layer_compute_ops(const TransformerConfig& cfg, const ParallelismConfig& par) {
  LayerOpCounts out;
  out.fc_ops = fc_gemm_ops(cfg.hidden, cfg.seq_len, cfg.batch, par.tp_degree, cfg.ffn_mult);
  out.attn_ops = attention_gemm_ops(cfg.hidden, cfg.seq_len, cfg.batch, par.tp_degree);
  out.linear_ops = linear_gemm_ops(cfg.hidden, cfg.seq_len, cfg.batch, par.tp_degree);
  out.total_fwd_ops = checked_sum({out.fc_ops, out.attn_ops, out.linear_ops});
  out.bp_fc_ops = backprop_fc_ops(cfg, par);
  return out;
}

OpCount backprop_fc_ops(const TransformerConfig& cfg, const ParallelismConfig& par) {
  return checked_product(
      {4, cfg.ffn_mult, cfg.hidden, slice(cfg.hidden, par.tp_degree), cfg.seq_len, cfg.batch});
}

LayerCommBytes serialized_ar_bytes(const TransformerConfig& cfg, const ParallelismConfig& par) {
  const auto bpe = bytes_per_element(cfg.precision_bits);
  LayerCommBytes out;
  out.serialized_bytes_per_ar = checked_product({bpe, cfg.hidden, cfg.seq_len, cfg.batch});
  out.serialized_bytes_total = checked_product({out.serialized_ar_count, out.serialized_bytes_per_ar});
  out.dp_fc_weight_bytes =
      checked_product({bpe, cfg.ffn_mult, cfg.hidden, slice(cfg.hidden, par.tp_degree)});
  return out;
}

double amdahl_edge(const TransformerConfig& cfg, const ParallelismConfig& par) {
  const auto ops = layer_compute_ops(cfg, par);
  const auto bytes = serialized_ar_bytes(cfg, par);
  return static_cast<double>(ops.total_fwd_ops) / static_cast<double>(bytes.serialized_bytes_total);
}

double slack_advantage(const TransformerConfig& cfg, const ParallelismConfig& par) {
  const auto bytes = serialized_ar_bytes(cfg, par);
  return static_cast<double>(backprop_fc_ops(cfg, par)) /
         static_cast<double>(bytes.dp_fc_weight_bytes);
}

EdgeSlack edge_slack(const TransformerConfig& cfg, const ParallelismConfig& par) {
  return {amdahl_edge(cfg, par), slack_advantage(cfg, par)};
}

TpEstimate estimate_tp(double param_count, double mem_capacity_scale, TpRounding rounding,
                       double base_param_count, double base_tp) {
  for (auto [label, v] : {std::pair{"params", param_count},
                          std::pair{"mem-scale", mem_capacity_scale},
                          std::pair{"base-params", base_param_count},
                          std::pair{"base-tp", base_tp}}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError(std::string(label) + " must be positive, got " + format_double(v));
    }
  }
  TpEstimate out;
  out.raw = base_tp * (param_count / base_param_count) / mem_capacity_scale;
  const double up = std::ceil(out.raw);
  if (up >= static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
    throw ValidationError("estimated TP degree " + format_double(out.raw) + " is out of range");
  }
  const auto ceil_tp = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(up));
  out.tp = rounding == TpRounding::kCeil ? ceil_tp : std::bit_ceil(ceil_tp);
  return out;
}

std::uint64_t memory_demand_proxy(const TransformerConfig& cfg) {
  return checked_product({cfg.hidden, cfg.seq_len});
}

OpCount GemmShape::ops() const { return checked_product({2, m, n, k, batch}); }

std::vector<GemmShape> forward_gemms(const TransformerConfig& cfg, const ParallelismConfig& par) {
  const auto h_slice = slice(cfg.hidden, par.tp_degree);
  const auto tokens = checked_product({cfg.seq_len, cfg.batch});
  const auto fc_cols = checked_product({cfg.ffn_mult, h_slice});
  std::vector<GemmShape> out;
  out.reserve(5);
  out.push_back({Sublayer::kFc, tokens, fc_cols, cfg.hidden, 1});
  out.push_back({Sublayer::kAttention, cfg.seq_len, cfg.seq_len, h_slice, cfg.batch});
  for (int i = 0; i < 3; ++i) out.push_back({Sublayer::kLinear, tokens, h_slice, cfg.hidden, 1});
  return out;
}

std::vector<TrendPoint> trend_series(const ModelZoo& zoo,
                                     const std::map<std::string, TrendAssignment>& per_model) {
  std::vector<TrendPoint> out;
  for (const auto& entry : zoo.entries()) {
    auto it = per_model.find(entry.name);
    if (it == per_model.end()) {
      it = std::find_if(per_model.begin(), per_model.end(),
                        [&](const auto& kv) { return iequals(kv.first, entry.name); });
    }
    if (it == per_model.end()) {
      throw ValidationError("trend series: no (B, TP) assignment for model '" + entry.name + "'");
    }
    TransformerConfig cfg = entry;
    cfg.batch = it->second.batch;
    ParallelismConfig par;
    par.tp_degree = it->second.tp;
    validate(cfg);
    validate(par);
    validate_pairing(cfg, par);

    TrendPoint point;
    point.name = entry.name;
    point.batch = cfg.batch;
    point.tp = par.tp_degree;
    point.slack_ratio = slack_advantage(cfg, par);
    point.edge_ratio = amdahl_edge(cfg, par);
    out.push_back(std::move(point));
  }
  if (!out.empty()) {
    const double slack0 = out.front().slack_ratio;
    const double edge0 = out.front().edge_ratio;
    for (auto& p : out) {
      p.normalized_slack = p.slack_ratio / slack0;
      p.normalized_edge = p.edge_ratio / edge0;
    }
  }
  return out;
}

const std::map<std::string, TrendAssignment>& reference_trend_assignments() {
  static const std::map<std::string, TrendAssignment> assignments = {
      {"BERT", {16, 1}},    {"T5", {16, 8}},     {"GPT-2", {8, 1}},     {"Mega-LM", {4, 8}},
      {"T-NLG", {2, 16}},   {"GPT-3", {1, 64}},  {"MT-NLG", {1, 128}},  {"PaLM", {1, 128}},
  };
  return assignments;
}

}  // namespace commscale
