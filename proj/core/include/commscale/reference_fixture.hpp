#pragma once

// Bundled reference data. The profile is a tuned regression anchor for the
// 64K-hidden case study, not an independent hardware measurement.

#include <map>
#include <string>
#include <string_view>

#include "commscale/analytic.hpp"
#include "commscale/config_io.hpp"
#include "commscale/cost_model.hpp"

namespace commscale {

// Contents of data/reference_profile.csv, embedded at build time.
std::string_view reference_profile_csv();

// 4-device node: 181 TFLOP/s FP16 peak, 150 GB/s ring all-reduce.
HardwareConfig reference_hardware();

// calibrate(parse_profile(reference_profile_csv()), reference_hardware()).
const CostModel& reference_cost_model();

// H=64K, SL=4K, B=1, TP=128, DP=16 on reference_hardware().
RunConfig case_study_config();

}  // namespace commscale
