#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commscale/config_io.hpp"
#include "commscale_cli/cli.hpp"

namespace fs = std::filesystem;
using commscale::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(COMMSCALE_DATA_DIR) + "/" + name; }

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("commscale_cli_" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const char* name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kNoParallel = R"({"model": {"hidden": 1024, "seq_len": 512, "num_layers": 2},
  "parallelism": {"tp": 1, "dp": 1},
  "hardware": {"peak_flops": 1e14, "ar_bandwidth": 1e11}})";

}  // namespace

TEST(Cli, VersionAndHelp) {
  const auto v = invoke({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "commscale 0.3.0\n");
  const auto h = invoke({"--help"});
  EXPECT_EQ(h.code, 0);
  for (const char* verb : {"zoo", "analyze", "calibrate", "estimate-tp", "sweep", "evolve"}) {
    EXPECT_NE(h.out.find(verb), std::string::npos) << verb;
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"estimate-tp", "--params", "1e9"}).code, 1);
  EXPECT_EQ(invoke({"analyze", "/does/not/exist.json", "--roofline"}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--roofline"}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--table3-defaults", "--roofline", "--figure", "fig99"}).code, 1);
  const auto both = invoke({"analyze", data("fig14_config.json"), "--roofline", "--cost-model",
                            data("reference_cost_model.json")});
  EXPECT_EQ(both.code, 1);
}

TEST(Cli, ZooLines) {
  const auto r = invoke({"zoo"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.front(), '{');
    EXPECT_EQ(line.back(), '}');
    ++n;
  }
  EXPECT_EQ(n, 8);
}

TEST(Cli, EstimateTp) {
  EXPECT_NE(invoke({"estimate-tp", "--params", "540e9", "--mem-scale", "2.77"}).out.find("\"tp\":400"),
            std::string::npos);
  EXPECT_NE(invoke({"estimate-tp", "--params", "540e9", "--mem-scale", "2.77", "--round",
                    "next_pow2"})
                .out.find("\"tp\":512"),
            std::string::npos);
  EXPECT_NE(invoke({"estimate-tp", "--params", "3.9e9", "--mem-scale", "1"}).out.find("\"tp\":8}"),
            std::string::npos);
  EXPECT_EQ(invoke({"estimate-tp", "--params", "0", "--mem-scale", "1"}).code, 1);
  EXPECT_EQ(invoke({"estimate-tp", "--params", "1e9", "--mem-scale", "-3"}).code, 1);
}

TEST_F(CliFiles, AnalyzeFig14) {
  const auto r = invoke({"analyze", data("fig14_config.json"), "--cost-model",
                         data("reference_cost_model.json"), "--flop-vs-bw", "4", "--dp-slowdown",
                         "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  const auto pos = r.out.find("\"serialized_fraction\": ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(pos + 23)), 0.47, 0.08);
}

TEST_F(CliFiles, AnalyzeNoParallelismIsAllCompute) {
  const auto cfg = write("single.json", kNoParallel);
  const auto r = invoke({"analyze", cfg, "--roofline", "--flop-vs-bw", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"frac_compute\": 1.0"), std::string::npos) << r.out;
}

TEST_F(CliFiles, AnalyzeMissingPricingIsUsage) {
  const auto cfg = write("single.json", kNoParallel);
  EXPECT_EQ(invoke({"analyze", cfg}).code, 1);
}

TEST_F(CliFiles, AnalyzeDataErrors) {
  const auto bad = write("bad.json", R"({"model": {"hidden": 100, "seq_len": 8},
    "parallelism": {"tp": 8}, "hardware": {"peak_flops": 1e14, "ar_bandwidth": 1e11}})");
  const auto r = invoke({"analyze", bad, "--roofline"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("not divisible"), std::string::npos);
  EXPECT_EQ(invoke({"analyze", write("junk.json", "{"), "--roofline"}).code, 2);
  const auto cfg = write("single.json", kNoParallel);
  EXPECT_EQ(invoke({"analyze", cfg, "--roofline", "--flop-vs-bw", "0.5"}).code, 2);
}

TEST_F(CliFiles, CalibrateDeterministic) {
  const auto out = path("cm.json");
  const auto first = invoke({"calibrate", data("reference_profile.csv"), "--hardware",
                             data("reference_hardware.json"), "--out", out});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_TRUE(first.out.empty());
  EXPECT_NE(first.err.find("gemm: 6 baselines"), std::string::npos);
  const auto bytes = commscale::read_text_file(out);
  invoke({"calibrate", data("reference_profile.csv"), "--hardware", data("reference_hardware.json"),
          "--out", out});
  EXPECT_EQ(commscale::read_text_file(out), bytes);
  EXPECT_EQ(bytes, commscale::read_text_file(data("reference_cost_model.json")));
}

TEST_F(CliFiles, CalibrateThreeKinds) {
  const auto csv = write("p.csv", "kind,size_metric,time_s\ngemm,1e9,1e-3\nlayernorm,1e6,1e-5\n"
                                  "allreduce,1e6,1e-5\n");
  const auto r = invoke({"calibrate", csv, "--hardware", data("reference_hardware.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* kind : {"\"gemm\"", "\"layernorm\"", "\"allreduce\""}) {
    EXPECT_NE(r.out.find(kind), std::string::npos) << kind;
  }
}

TEST_F(CliFiles, CalibrateErrors) {
  const auto empty = write("empty.csv", "");
  EXPECT_EQ(invoke({"calibrate", empty, "--hardware", data("reference_hardware.json")}).code, 2);
  const auto bad = write("bad.csv", "kind,size_metric,time_s\ngemm,1,1\nconv,1,1\ngemm,x,1\n");
  const auto r = invoke({"calibrate", bad, "--hardware", data("reference_hardware.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_NE(r.err.find("line 4"), std::string::npos);
}

TEST_F(CliFiles, SweepDefaultsToFile) {
  const auto out = path("t3.csv");
  const auto r = invoke({"sweep", "--table3-defaults", "--roofline", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto csv = commscale::read_text_file(out);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 393);
}

TEST_F(CliFiles, SweepFigureToStdout) {
  const auto r = invoke({"sweep", "--table3-defaults", "--roofline", "--figure", "fig10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("figure,x,series,y\nfig10,4,", 0), 0u);
}

TEST_F(CliFiles, SweepPlotOut) {
  const auto out = path("t.csv");
  const auto plot = path("p.json");
  const auto r = invoke({"sweep", "--spec", data("table3_sweep.json"), "--cost-model",
                         data("reference_cost_model.json"), "--figure", "fig13", "--format",
                         "json", "--out", out, "--plot-out", plot, "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(commscale::read_text_file(out).front(), '[');
  EXPECT_NE(commscale::read_text_file(plot).find("\"figure\": \"fig13\""), std::string::npos);
}

TEST_F(CliFiles, SweepFig7) {
  const auto r = invoke({"sweep", "--figure", "fig7", "--assignments",
                         data("trend_assignments.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("fig7,PaLM,slack,0.25"), std::string::npos);
}

TEST_F(CliFiles, SweepSpecErrors) {
  const auto spec = write("s.json", R"({"H": []})");
  EXPECT_EQ(invoke({"sweep", "--spec", spec, "--roofline"}).code, 2);
  const auto bad = write("b.json", R"({"H": "x"})");
  EXPECT_EQ(invoke({"sweep", "--spec", bad, "--roofline"}).code, 2);
}

TEST_F(CliFiles, SweepRowErrorsEmbedded) {
  const auto spec = write("s.json", R"({"H": [1024], "SL": [8], "B": [1], "TP": [4], "dp": 4})");
  const auto cm = write("cm.json", R"({"mode": "calibrated",
    "baselines": {"gemm": [[1e6, 1e-6]]},
    "hardware": {"peak_flops": 1e14, "ar_bandwidth": 1e11}})");
  const auto r = invoke({"sweep", "--spec", spec, "--cost-model", cm});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("no allreduce baseline"), std::string::npos) << r.out;
  EXPECT_NE(r.err.find("1 row(s) failed"), std::string::npos);
}

TEST_F(CliFiles, EvolveSeries) {
  const auto r = invoke({"evolve", data("fig14_config.json"), "--cost-model",
                         data("reference_cost_model.json"), "--flop-vs-bw", "1,2,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.front(), '[');
  EXPECT_NE(r.out.find("\"flop_vs_bw\": 2.0"), std::string::npos);
  EXPECT_NE(r.out.find("\"flop_vs_bw\": 4.0"), std::string::npos);
}
