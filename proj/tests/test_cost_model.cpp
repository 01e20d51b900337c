#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "commscale/cost_model.hpp"

using namespace commscale;

namespace {

HardwareConfig hw() {
  HardwareConfig h;
  h.peak_flops = 100e12;
  h.flops_efficiency = 0.5;
  h.ar_bandwidth = 10e9;
  h.ar_ref_devices = 4;
  return h;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CostModel three_baselines() {
  return CostModel::calibrated(
      {{OperatorKind::kGemm, {{100.0, 1.0}, {1000.0, 5.0}, {10000.0, 20.0}}}}, hw());
}

}  // namespace

TEST(OperatorKind, NamesRoundTrip) {
  for (auto kind : kAllOperatorKinds) EXPECT_EQ(parse_operator_kind(to_string(kind)), kind);
  EXPECT_FALSE(parse_operator_kind("conv"));
}

TEST(Profile, ParsesAndSkipsComments) {
  const auto rows = parse_profile(
      "\xEF\xBB\xBF# note\nkind,size_metric,time_s\n\ngemm,1e9,0.01\nallreduce,4096,2e-6\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].kind, OperatorKind::kGemm);
  EXPECT_DOUBLE_EQ(rows[0].size_metric, 1e9);
  EXPECT_DOUBLE_EQ(rows[1].measured_time, 2e-6);
}

TEST(Profile, ReportsEveryBadLine) {
  try {
    parse_profile("kind,size_metric,time_s\ngemm,-1,1\nconv,1,1\ngemm,1,1\nlayernorm,1\n");
    FAIL();
  } catch (const ProfileError& e) {
    ASSERT_EQ(e.issues().size(), 3u);
    EXPECT_EQ(e.issues()[0].line, 2u);
    EXPECT_EQ(e.issues()[1].line, 3u);
    EXPECT_EQ(e.issues()[2].line, 5u);
  }
}

TEST(Profile, EmptyAndBadHeader) {
  EXPECT_THROW(parse_profile(""), ProfileError);
  EXPECT_THROW(parse_profile("size,kind,time\n"), ProfileError);
}

TEST(Calibrate, ProportionalRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> log_size(3.0, 13.0);
  const std::map<OperatorKind, double> rate{{OperatorKind::kGemm, 3.7e-14},
                                            {OperatorKind::kLayerNorm, 2.2e-11},
                                            {OperatorKind::kAllReduce, 9.1e-12}};
  std::vector<OperatorRecord> records;
  for (auto [kind, c] : rate) {
    for (int i = 0; i < 12; ++i) {
      const double size = std::pow(10.0, log_size(rng));
      records.push_back({kind, size, c * size});
    }
  }
  const auto model = calibrate(records, hw());
  EXPECT_EQ(model.mode(), PricingMode::kCalibrated);
  for (auto [kind, c] : rate) {
    for (int i = 0; i < 100; ++i) {
      const double size = std::pow(10.0, log_size(rng) + 1.0);
      EXPECT_LT(rel(project_time(model, kind, size), c * size), 1e-12);
    }
  }
}

TEST(Calibrate, AveragesDuplicatesAndSorts) {
  const std::vector<OperatorRecord> records{{OperatorKind::kGemm, 200.0, 4.0},
                                            {OperatorKind::kGemm, 100.0, 1.0},
                                            {OperatorKind::kGemm, 200.0, 2.0}};
  const auto model = calibrate(records, hw());
  const auto list = model.baselines(OperatorKind::kGemm);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0], (Baseline{100.0, 1.0}));
  EXPECT_EQ(list[1], (Baseline{200.0, 3.0}));
}

TEST(Calibrate, RejectsEmpty) {
  EXPECT_THROW(calibrate({}, hw()), ValidationError);
}

TEST(NearestBaseline, BelowAllUsesSmallest) {
  EXPECT_DOUBLE_EQ(project_time(three_baselines(), OperatorKind::kGemm, 50.0), 0.5);
}

TEST(NearestBaseline, ExactHitReturnsMeasured) {
  const auto m = three_baselines();
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kGemm, 100.0), 1.0);
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kGemm, 1000.0), 5.0);
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kGemm, 10000.0), 20.0);
}

TEST(NearestBaseline, LargestNotAbove) {
  const auto m = three_baselines();
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kGemm, 999.0), 9.99);
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kGemm, 5000.0), 25.0);
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kGemm, 1e6), 2000.0);
}

TEST(NearestBaseline, MonotoneWithConsistentRates) {
  // Per-unit cost never falls with size here, so projections never drop.
  const auto m = CostModel::calibrated(
      {{OperatorKind::kAllReduce, {{1e3, 1e-6}, {1e5, 2e-4}, {1e7, 5e-2}}}}, hw());
  double prev = 0.0;
  for (double s = 10.0; s < 1e9; s *= 1.7) {
    const double t = project_time(m, OperatorKind::kAllReduce, s);
    EXPECT_GE(t, prev);
    prev = t;
  }
}

TEST(NearestBaseline, DropsAtFasterBaseline) {
  const auto m = three_baselines();
  EXPECT_GT(project_time(m, OperatorKind::kGemm, 999.0),
            project_time(m, OperatorKind::kGemm, 1000.0));
}

TEST(Pricing, MissingKindErrors) {
  EXPECT_THROW(project_time(three_baselines(), OperatorKind::kLayerNorm, 10.0), PricingError);
  EXPECT_FALSE(three_baselines().can_price(OperatorKind::kAllReduce));
}

TEST(Pricing, CalibratedValidation) {
  EXPECT_THROW(CostModel::calibrated({}, hw()), ValidationError);
  EXPECT_THROW(CostModel::calibrated({{OperatorKind::kGemm, {{2.0, 1.0}, {1.0, 1.0}}}}, hw()),
               ValidationError);
  EXPECT_THROW(CostModel::calibrated({{OperatorKind::kGemm, {{1.0, 0.0}}}}, hw()),
               ValidationError);
}

TEST(Roofline, GemmAndAllReduce) {
  const auto m = CostModel::roofline(hw());
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kGemm, 5e13), 1.0);
  EXPECT_DOUBLE_EQ(project_time(m, OperatorKind::kAllReduce, 1e10), 1.0);
  EXPECT_THROW(project_time(m, OperatorKind::kLayerNorm, 1.0), PricingError);
}

TEST(Roofline, RingScaling) {
  EXPECT_DOUBLE_EQ(ring_traffic_factor(2), 0.5);
  EXPECT_DOUBLE_EQ(ring_traffic_factor(4), 0.75);
  EXPECT_THROW(ring_traffic_factor(1), ValidationError);
  const auto h = hw();
  EXPECT_DOUBLE_EQ(ar_time(h, 1e10, 4), 1.0);
  EXPECT_DOUBLE_EQ(ar_time(h, 1e10, 2), 0.5 / 0.75);
  EXPECT_DOUBLE_EQ(ar_time(h, 1e10, 16), (15.0 / 16.0) / 0.75);
}

TEST(Roofline, CalibratedAllReduceRescaled) {
  const auto m =
      CostModel::calibrated({{OperatorKind::kAllReduce, {{1e6, 1e-3}}}}, hw());
  EXPECT_DOUBLE_EQ(allreduce_time(m, 2e6, 4), 2e-3);
  EXPECT_DOUBLE_EQ(allreduce_time(m, 2e6, 8), 2e-3 * (7.0 / 8.0) / 0.75);
}

TEST(CostModelJson, RoundTrip) {
  const auto m = three_baselines();
  EXPECT_EQ(load_cost_model(to_json(m)), m);
  const auto r = CostModel::roofline(hw());
  EXPECT_EQ(load_cost_model(to_json(r)), r);
}

TEST(CostModelJson, Malformed) {
  EXPECT_THROW(load_cost_model(R"({"mode": "magic", "baselines": {}, "hardware": {}})"),
               ParseError);
  EXPECT_THROW(load_cost_model("[]"), ParseError);
}

TEST(CostModel, WithHardware) {
  auto other = hw();
  other.peak_flops = 1e12;
  const auto m = three_baselines().with_hardware(other);
  EXPECT_EQ(m.hardware(), other);
  EXPECT_EQ(m.baselines(OperatorKind::kGemm).size(), 3u);
}
