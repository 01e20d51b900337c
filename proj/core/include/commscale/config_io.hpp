#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "commscale/analytic.hpp"
#include "commscale/types.hpp"

namespace commscale {

struct RunConfig {
  TransformerConfig model;
  ParallelismConfig parallelism;
  HardwareConfig hardware;

  bool operator==(const RunConfig&) const = default;
};

// Parses a configuration document:
//
//   {
//     "model": {"zoo": "GPT-3", "batch": 4}            // or explicit fields
//     "parallelism": {"tp": 8, "dp": 4, "node_devices": 4, "dp_comm_slowdown": 1},
//     "hardware": {"peak_flops": 181e12, "flops_efficiency": 0.85,
//                  "ar_bandwidth": 150e9, "ar_ref_devices": 4, "flop_vs_bw_scale": 1}
//   }
//
// Explicit model keys: name, num_layers, hidden, seq_len, batch, ffn_mult,
// fc_dim, precision_bits, param_count, num_heads; with "zoo" they override the
// zoo entry. Unknown keys are rejected. Throws ParseError (with field path)
// for malformed input and ValidationError for invariant violations.
RunConfig load_config(std::string_view document);
RunConfig load_config_file(const std::filesystem::path& path);

// Canonical form; the model is always written out explicitly.
std::string to_json(const RunConfig& config);

// Single line, keys sorted.
std::string to_json(const TransformerConfig& model);

HardwareConfig load_hardware(std::string_view document);
std::string to_json(const HardwareConfig& hw);

// {"BERT": {"batch": 16, "tp": 1}, ...}; keys are zoo model names.
std::map<std::string, TrendAssignment> load_trend_assignments(std::string_view document);

// Reads a whole file; throws ParseError naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace commscale
