#include "commscale/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "commscale/format.hpp"
#include "json_codec.hpp"

namespace commscale {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kGemm:
      return "gemm";
    case OperatorKind::kLayerNorm:
      return "layernorm";
    case OperatorKind::kAllReduce:
      return "allreduce";
  }
  return "unknown";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view text) {
  for (auto kind : kAllOperatorKinds) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(PricingMode mode) {
  return mode == PricingMode::kRoofline ? "roofline" : "calibrated";
}

CostModel::CostModel(PricingMode mode, std::map<OperatorKind, std::vector<Baseline>> baselines,
                     const HardwareConfig& hw)
    : mode_(mode), baselines_(std::move(baselines)), hardware_(hw) {
  validate(hardware_);
}

CostModel CostModel::roofline(const HardwareConfig& hw) {
  return CostModel(PricingMode::kRoofline, {}, hw);
}

CostModel CostModel::calibrated(std::map<OperatorKind, std::vector<Baseline>> baselines,
                                const HardwareConfig& hw) {
  for (auto it = baselines.begin(); it != baselines.end();) {
    if (it->second.empty()) {
      it = baselines.erase(it);
      continue;
    }
    const auto& list = it->second;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& b = list[i];
      if (!(std::isfinite(b.size_metric) && b.size_metric > 0.0 && std::isfinite(b.time_s) &&
            b.time_s > 0.0)) {
        throw ValidationError(std::string(to_string(it->first)) +
                              " baseline must have positive size and time, got (" +
                              format_double(b.size_metric) + ", " + format_double(b.time_s) + ")");
      }
      if (i > 0 && !(list[i - 1].size_metric < b.size_metric)) {
        throw ValidationError(std::string(to_string(it->first)) +
                              " baselines must be strictly increasing in size");
      }
    }
    ++it;
  }
  if (baselines.empty()) throw ValidationError("calibrated cost model has no baselines");
  return CostModel(PricingMode::kCalibrated, std::move(baselines), hw);
}

std::span<const Baseline> CostModel::baselines(OperatorKind kind) const {
  auto it = baselines_.find(kind);
  if (it == baselines_.end()) return {};
  return it->second;
}

bool CostModel::can_price(OperatorKind kind) const {
  if (mode_ == PricingMode::kRoofline) return kind != OperatorKind::kLayerNorm;
  return !baselines(kind).empty();
}

CostModel CostModel::with_hardware(const HardwareConfig& hw) const {
  return CostModel(mode_, baselines_, hw);
}

CostModel calibrate(std::span<const OperatorRecord> records, const HardwareConfig& hw) {
  if (records.empty()) throw ValidationError("cannot calibrate from an empty record set");

  std::map<OperatorKind, std::map<double, std::pair<double, std::size_t>>> grouped;
  for (const auto& r : records) {
    if (!(r.size_metric > 0.0 && r.measured_time > 0.0)) {
      throw ValidationError("operator record must have positive size and time");
    }
    auto& slot = grouped[r.kind][r.size_metric];
    slot.first += r.measured_time;
    slot.second += 1;
  }
  std::map<OperatorKind, std::vector<Baseline>> baselines;
  for (const auto& [kind, by_size] : grouped) {
    auto& list = baselines[kind];
    for (const auto& [size, acc] : by_size) {
      list.push_back({size, acc.first / static_cast<double>(acc.second)});
    }
  }
  return CostModel::calibrated(std::move(baselines), hw);
}

double roofline_gemm_time(const HardwareConfig& hw, double ops) {
  if (ops == 0.0) return 0.0;
  return ops / (hw.peak_flops * hw.flops_efficiency * hw.flop_vs_bw_scale);
}

double ring_traffic_factor(std::uint64_t devices) {
  if (devices < 2) {
    throw ValidationError("all-reduce needs at least 2 devices, got " + std::to_string(devices));
  }
  const auto n = static_cast<double>(devices);
  return (n - 1.0) / n;
}

double ar_time(const HardwareConfig& hw, double bytes, std::uint64_t devices) {
  const double scale = ring_traffic_factor(devices) / ring_traffic_factor(hw.ar_ref_devices);
  return bytes / hw.ar_bandwidth * scale;
}

double project_time(const CostModel& model, OperatorKind kind, double size_metric) {
  if (!model.can_price(kind)) {
    if (model.mode() == PricingMode::kRoofline) {
      throw PricingError("roofline pricing has no model for " + std::string(to_string(kind)) +
                         "; calibrate from a profile instead");
    }
    throw PricingError("cost model has no " + std::string(to_string(kind)) + " baseline");
  }
  if (!(size_metric >= 0.0)) {
    throw PricingError("size metric must be non-negative, got " + format_double(size_metric));
  }
  if (model.mode() == PricingMode::kRoofline) {
    if (kind == OperatorKind::kGemm) return roofline_gemm_time(model.hardware(), size_metric);
    return ar_time(model.hardware(), size_metric, model.hardware().ar_ref_devices);
  }

  const auto list = model.baselines(kind);
  auto above = std::upper_bound(
      list.begin(), list.end(), size_metric,
      [](double size, const Baseline& b) { return size < b.size_metric; });
  const Baseline& base = above == list.begin() ? list.front() : *std::prev(above);
  return base.time_s * (size_metric / base.size_metric);
}

double allreduce_time(const CostModel& model, double bytes, std::uint64_t devices) {
  const auto& hw = model.hardware();
  if (model.mode() == PricingMode::kRoofline) return ar_time(hw, bytes, devices);
  const double scale = ring_traffic_factor(devices) / ring_traffic_factor(hw.ar_ref_devices);
  return project_time(model, OperatorKind::kAllReduce, bytes) * scale;
}

std::string to_json(const CostModel& model) {
  detail::json root = detail::json::object();
  root["mode"] = std::string(to_string(model.mode()));
  detail::json baselines = detail::json::object();
  for (const auto& [kind, list] : model.all_baselines()) {
    detail::json rows = detail::json::array();
    for (const auto& b : list) rows.push_back({b.size_metric, b.time_s});
    baselines[std::string(to_string(kind))] = std::move(rows);
  }
  root["baselines"] = std::move(baselines);
  root["hardware"] = detail::hardware_to_json(model.hardware());
  return root.dump(2);
}

CostModel load_cost_model(std::string_view document) {
  using detail::json;
  const json root = detail::parse_json(document, "cost-model");
  detail::require_object(root, "");
  detail::reject_unknown_keys(root, "", {"mode", "baselines", "hardware"});
  for (auto key : {"mode", "hardware"}) {
    if (!root.contains(key)) throw ParseError(key, "required key missing");
  }
  const auto mode_text = detail::as_string(root.at("mode"), "mode");
  const auto hw = detail::hardware_from_json(root.at("hardware"), "hardware");

  std::map<OperatorKind, std::vector<Baseline>> baselines;
  if (root.contains("baselines")) {
    const auto& obj = detail::require_object(root.at("baselines"), "baselines");
    for (const auto& [key, rows] : obj.items()) {
      const auto path = "baselines." + key;
      const auto kind = parse_operator_kind(key);
      if (!kind) throw ParseError(path, "unknown operator kind");
      if (!rows.is_array()) throw ParseError(path, "expected an array of [size, time] pairs");
      auto& list = baselines[*kind];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto row_path = path + "[" + std::to_string(i) + "]";
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != 2) {
          throw ParseError(row_path, "expected a [size, time] pair");
        }
        list.push_back({detail::as_double(row[0], row_path + "[0]"),
                        detail::as_double(row[1], row_path + "[1]")});
      }
    }
  }

  if (mode_text == "roofline") {
    if (!baselines.empty()) throw ParseError("baselines", "roofline mode takes no baselines");
    return CostModel::roofline(hw);
  }
  if (mode_text == "calibrated") return CostModel::calibrated(std::move(baselines), hw);
  throw ParseError("mode", "expected 'roofline' or 'calibrated', got '" + mode_text + "'");
}

}  // namespace commscale
