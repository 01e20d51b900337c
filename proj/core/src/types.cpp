#include "commscale/types.hpp"

#include <cmath>
#include <string>

#include "commscale/errors.hpp"
#include "commscale/format.hpp"

namespace commscale {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

void validate(const TransformerConfig& cfg) {
  require(cfg.hidden >= 1, "model.hidden must be >= 1, got " + std::to_string(cfg.hidden));
  require(cfg.seq_len >= 1, "model.seq_len must be >= 1, got " + std::to_string(cfg.seq_len));
  require(cfg.batch >= 1, "model.batch must be >= 1, got " + std::to_string(cfg.batch));
  require(cfg.num_layers >= 1,
          "model.num_layers must be >= 1, got " + std::to_string(cfg.num_layers));
  require(cfg.ffn_mult >= 1, "model.ffn_mult must be >= 1, got " + std::to_string(cfg.ffn_mult));
  const auto p = cfg.precision_bits;
  require(p == 8 || p == 16 || p == 32 || p == 64,
          "model.precision_bits must be one of {8, 16, 32, 64}, got " + std::to_string(p));
  if (cfg.param_count) {
    require(std::isfinite(*cfg.param_count) && *cfg.param_count > 0.0,
            "model.param_count must be positive, got " + format_double(*cfg.param_count));
  }
}

void validate(const ParallelismConfig& par) {
  require(par.tp_degree >= 1, "parallelism.tp must be >= 1, got " + std::to_string(par.tp_degree));
  require(par.dp_degree >= 1, "parallelism.dp must be >= 1, got " + std::to_string(par.dp_degree));
  require(par.node_device_count >= 1, "parallelism.node_devices must be >= 1, got " +
                                          std::to_string(par.node_device_count));
  require(std::isfinite(par.dp_comm_slowdown) && par.dp_comm_slowdown >= 1.0,
          "parallelism.dp_comm_slowdown must be >= 1, got " + format_double(par.dp_comm_slowdown));
}

void validate(const HardwareConfig& hw) {
  require(std::isfinite(hw.peak_flops) && hw.peak_flops > 0.0,
          "hardware.peak_flops must be > 0, got " + format_double(hw.peak_flops));
  require(std::isfinite(hw.ar_bandwidth) && hw.ar_bandwidth > 0.0,
          "hardware.ar_bandwidth must be > 0, got " + format_double(hw.ar_bandwidth));
  require(hw.ar_ref_devices >= 2,
          "hardware.ar_ref_devices must be >= 2, got " + std::to_string(hw.ar_ref_devices));
  require(hw.flops_efficiency > 0.0 && hw.flops_efficiency <= 1.0,
          "hardware.flops_efficiency must be in (0, 1], got " +
              format_double(hw.flops_efficiency));
  require(std::isfinite(hw.flop_vs_bw_scale) && hw.flop_vs_bw_scale >= 1.0,
          "hardware.flop_vs_bw_scale must be >= 1, got " + format_double(hw.flop_vs_bw_scale));
}

void validate_pairing(const TransformerConfig& cfg, const ParallelismConfig& par) {
  if (par.tp_degree == 0 || cfg.hidden % par.tp_degree != 0) {
    throw ValidationError("model.hidden (" + std::to_string(cfg.hidden) +
                          ") is not divisible by parallelism.tp (" +
                          std::to_string(par.tp_degree) + ")");
  }
}

}  // namespace commscale
