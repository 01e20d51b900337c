#include <gtest/gtest.h>

#include "commscale/config_io.hpp"
#include "commscale/reference_fixture.hpp"
#include "commscale/sweep.hpp"

using namespace commscale;

namespace {

std::string data(const char* name) { return read_text_file(std::string(COMMSCALE_DATA_DIR) + "/" + name); }

}  // namespace

TEST(Fixture, ProfileMatchesEmbedded) {
  EXPECT_EQ(data("reference_profile.csv"), reference_profile_csv());
}

TEST(Fixture, HardwareMatches) {
  EXPECT_EQ(load_hardware(data("reference_hardware.json")), reference_hardware());
}

TEST(Fixture, CostModelFileIsCalibrateOutput) {
  EXPECT_EQ(data("reference_cost_model.json"), to_json(reference_cost_model()) + "\n");
  const auto recalibrated = calibrate(parse_profile(reference_profile_csv()), reference_hardware());
  EXPECT_EQ(recalibrated, reference_cost_model());
}

TEST(Fixture, ProfileCoversAllKinds) {
  for (auto kind : kAllOperatorKinds) {
    EXPECT_GE(reference_cost_model().baselines(kind).size(), 3u) << to_string(kind);
  }
}

TEST(Fixture, CaseStudyConfigMatches) {
  EXPECT_EQ(load_config(data("fig14_config.json")), case_study_config());
}

TEST(Fixture, TrendAssignmentsMatch) {
  const auto loaded = load_trend_assignments(data("trend_assignments.json"));
  const auto& builtin = reference_trend_assignments();
  ASSERT_EQ(loaded.size(), builtin.size());
  for (const auto& [name, a] : builtin) {
    ASSERT_TRUE(loaded.count(name)) << name;
    EXPECT_EQ(loaded.at(name).batch, a.batch);
    EXPECT_EQ(loaded.at(name).tp, a.tp);
  }
}

TEST(Fixture, Table3SpecExtendsDefaults) {
  const auto spec = load_sweep_spec(data("table3_sweep.json"));
  const auto defaults = SweepSpec::table3_defaults();
  EXPECT_EQ(spec.hidden_values, defaults.hidden_values);
  EXPECT_EQ(spec.seq_len_values, defaults.seq_len_values);
  EXPECT_EQ(spec.batch_values, defaults.batch_values);
  EXPECT_EQ(spec.tp_values, defaults.tp_values);
  EXPECT_EQ(spec.f_values, (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(build_grid(spec).cases.size(), 3u * 392);
}
