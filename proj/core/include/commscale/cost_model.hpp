#pragma once

// Operator-level runtime models. A CostModel prices an operator from a single
// size metric: FLOPs for GEMMs, elements for LayerNorm, bytes for all-reduce.
//
// Calibrated models scale a measured baseline proportionally. Against real
// hardware this has been observed to land within ~15% (GEMM), ~7% (LayerNorm)
// and ~11% (all-reduce) geomean error; those figures are documentation, not
// something this library can check.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commscale/errors.hpp"
#include "commscale/types.hpp"

namespace commscale {

enum class OperatorKind { kGemm, kLayerNorm, kAllReduce };

inline constexpr std::array<OperatorKind, 3> kAllOperatorKinds = {
    OperatorKind::kGemm, OperatorKind::kLayerNorm, OperatorKind::kAllReduce};

std::string_view to_string(OperatorKind kind);
std::optional<OperatorKind> parse_operator_kind(std::string_view text);

struct OperatorRecord {
  OperatorKind kind = OperatorKind::kGemm;
  double size_metric = 0.0;
  double measured_time = 0.0;  // seconds

  bool operator==(const OperatorRecord&) const = default;
};

struct ProfileIssue {
  std::size_t line = 0;  // 1-based
  std::string message;
};

// Every malformed row of a profile, not just the first.
class ProfileError : public ParseError {
 public:
  explicit ProfileError(std::vector<ProfileIssue> issues);
  const std::vector<ProfileIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ProfileIssue> issues_;
};

// Parses `kind,size_metric,time_s` CSV. Blank lines and lines starting with
// '#' are skipped; the first remaining line must be the header.
std::vector<OperatorRecord> parse_profile(std::string_view csv);

struct Baseline {
  double size_metric = 0.0;
  double time_s = 0.0;

  bool operator==(const Baseline&) const = default;
};

enum class PricingMode { kRoofline, kCalibrated };

std::string_view to_string(PricingMode mode);

class CostModel {
 public:
  static CostModel roofline(const HardwareConfig& hw);
  // Baselines per kind must be strictly increasing in size with positive
  // sizes and times; throws ValidationError otherwise.
  static CostModel calibrated(std::map<OperatorKind, std::vector<Baseline>> baselines,
                              const HardwareConfig& hw);

  PricingMode mode() const noexcept { return mode_; }
  const HardwareConfig& hardware() const noexcept { return hardware_; }
  std::span<const Baseline> baselines(OperatorKind kind) const;
  const std::map<OperatorKind, std::vector<Baseline>>& all_baselines() const noexcept {
    return baselines_;
  }

  bool can_price(OperatorKind kind) const;

  CostModel with_hardware(const HardwareConfig& hw) const;

  bool operator==(const CostModel&) const = default;

 private:
  CostModel(PricingMode mode, std::map<OperatorKind, std::vector<Baseline>> baselines,
            const HardwareConfig& hw);

  PricingMode mode_ = PricingMode::kRoofline;
  std::map<OperatorKind, std::vector<Baseline>> baselines_;
  HardwareConfig hardware_;
};

// Sorts by size and averages duplicate sizes. Throws ValidationError on an
// empty record set.
CostModel calibrate(std::span<const OperatorRecord> records, const HardwareConfig& hw);

// Calibrated: t_base * size / size_base using the largest baseline with
// size_base <= size (the smallest baseline when none is). Roofline: GEMM via
// roofline_gemm_time, all-reduce via ar_time at N = ar_ref_devices; LayerNorm
// has no roofline model. Throws PricingError when the kind cannot be priced.
double project_time(const CostModel& model, OperatorKind kind, double size_metric);

// ops / (peak_flops * flops_efficiency * flop_vs_bw_scale)
double roofline_gemm_time(const HardwareConfig& hw, double ops);

// (N-1)/N: per-device ring traffic relative to the payload.
double ring_traffic_factor(std::uint64_t devices);

// (bytes / ar_bandwidth) * ring(N) / ring(N_ref). Throws ValidationError for N < 2.
double ar_time(const HardwareConfig& hw, double bytes, std::uint64_t devices);

// All-reduce over `devices` participants under either pricing mode. The
// calibrated baselines are taken as measured at hardware().ar_ref_devices and
// rescaled by the same ring factor ar_time uses.
double allreduce_time(const CostModel& model, double bytes, std::uint64_t devices);

// {"mode": "calibrated", "baselines": {"gemm": [[size, time], ...]}, "hardware": {...}}
std::string to_json(const CostModel& model);
CostModel load_cost_model(std::string_view document);

}  // namespace commscale
