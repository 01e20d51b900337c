#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace commscale {

/// Transformer hyperparameters that size every GEMM and all-reduce in a layer.
///
/// All layers of a model are identical; encoder-decoder models are treated as
/// a plain stack of `num_layers` layers.
struct TransformerConfig {
  std::string name;
  std::uint64_t num_layers = 1;
  std::uint64_t hidden = 1;     // H
  std::uint64_t seq_len = 1;    // SL
  std::uint64_t batch = 1;      // B
  std::uint64_t ffn_mult = 4;   // FC expansion; FC dim = ffn_mult * H
  std::uint32_t precision_bits = 16;
  std::optional<double> param_count;
  // Display only; costs never read it.
  std::optional<std::uint64_t> num_heads;

  bool operator==(const TransformerConfig&) const = default;
};

struct ParallelismConfig {
  std::uint64_t tp_degree = 1;
  std::uint64_t dp_degree = 1;
  // Devices per node. Recorded for reports; all-reduces are priced with
  // N = TP (serialized) and N = DP (data parallel).
  std::uint64_t node_device_count = 4;
  // Multiplies the DP all-reduce time (inter-node links, interference).
  double dp_comm_slowdown = 1.0;

  bool operator==(const ParallelismConfig&) const = default;
};

struct HardwareConfig {
  double peak_flops = 0.0;          // ops/s at the configured precision
  double flops_efficiency = 0.85;   // achieved fraction of peak for GEMMs
  double ar_bandwidth = 0.0;        // bytes/s, effective ring all-reduce
  std::uint64_t ar_ref_devices = 4; // device count ar_bandwidth was measured at
  double flop_vs_bw_scale = 1.0;    // compute speedup relative to network

  bool operator==(const HardwareConfig&) const = default;
};

// Each validate() throws ValidationError naming the field and value.
void validate(const TransformerConfig& cfg);
void validate(const ParallelismConfig& par);
void validate(const HardwareConfig& hw);

// H must split evenly across the TP slices.
void validate_pairing(const TransformerConfig& cfg, const ParallelismConfig& par);

}  // namespace commscale
