#include "commscale/reference_fixture.hpp"

namespace commscale {
namespace detail {
std::string_view embedded_reference_profile();
}

std::string_view reference_profile_csv() { return detail::embedded_reference_profile(); }

HardwareConfig reference_hardware() {
  HardwareConfig hw;
  hw.peak_flops = 181e12;
  hw.flops_efficiency = 0.85;
  hw.ar_bandwidth = 150e9;
  hw.ar_ref_devices = 4;
  hw.flop_vs_bw_scale = 1.0;
  return hw;
}

const CostModel& reference_cost_model() {
  static const CostModel model = [] {
    const auto records = parse_profile(reference_profile_csv());
    return calibrate(records, reference_hardware());
  }();
  return model;
}

RunConfig case_study_config() {
  RunConfig cfg;
  cfg.model.name = "future-64K";
  cfg.model.num_layers = 128;
  cfg.model.hidden = 65536;
  cfg.model.seq_len = 4096;
  cfg.model.batch = 1;
  cfg.parallelism.tp_degree = 128;
  cfg.parallelism.dp_degree = 16;
  cfg.parallelism.node_device_count = 4;
  cfg.hardware = reference_hardware();
  return cfg;
}

}  // namespace commscale
