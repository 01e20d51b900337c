#include "commscale_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>

#include "commscale/commscale.hpp"

namespace commscale::cli {
namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PricingArgs {
  std::string cost_model_path;
  bool roofline = false;
};

void add_pricing_options(CLI::App& cmd, PricingArgs& args) {
  auto* cm = cmd.add_option("--cost-model", args.cost_model_path,
                            "Calibrated cost-model JSON (from `calibrate`)")
                 ->check(CLI::ExistingFile);
  auto* rf = cmd.add_flag("--roofline", args.roofline, "Price operators with the roofline model");
  cm->excludes(rf);
  rf->excludes(cm);
}

// Calibrated models carry their own hardware; roofline prices on `hw`.
CostModel resolve_pricing(const PricingArgs& args, const HardwareConfig& hw) {
  if (args.roofline) return CostModel::roofline(hw);
  if (args.cost_model_path.empty()) {
    throw UsageError("a pricing source is required: pass --cost-model FILE or --roofline");
  }
  return load_cost_model(read_text_file(args.cost_model_path));
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ParseError(path, "cannot open file for writing");
  file << text;
  if (!file.flush()) throw ParseError(path, "write failed");
}

json analysis_json(const TransformerConfig& model, const ParallelismConfig& par,
                   const CostModel& costs, double f, double dp_slowdown) {
  const auto b = combined_breakdown(model, par, costs, f, dp_slowdown);
  const auto ratios = edge_slack(model, par);
  json out = json::object();
  out["model"] = model.name;
  out["pricing"] = std::string(to_string(costs.mode()));
  out["flop_vs_bw"] = f;
  out["dp_slowdown"] = dp_slowdown;
  out["breakdown"] = json::parse(to_json(b));
  out["serialized_fraction"] = serialized_fraction(b);
  out["overlap_percent"] = overlap_percentage(b);
  out["edge_ratio"] = ratios.edge_ratio;
  out["slack_ratio"] = ratios.slack_ratio;
  return out;
}

int cmd_zoo(std::ostream& out) {
  for (const auto& entry : ModelZoo::builtin().entries()) out << to_json(entry) << '\n';
  return kOk;
}

struct AnalyzeArgs {
  std::string config_path;
  PricingArgs pricing;
  std::optional<double> f;
  std::optional<double> dp_slowdown;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto cfg = load_config_file(a.config_path);
  const auto costs = resolve_pricing(a.pricing, cfg.hardware);
  const double f = a.f.value_or(cfg.hardware.flop_vs_bw_scale);
  const double k = a.dp_slowdown.value_or(cfg.parallelism.dp_comm_slowdown);
  out << analysis_json(cfg.model, cfg.parallelism, costs, f, k).dump(2) << '\n';
  return kOk;
}

struct EvolveArgs {
  std::string config_path;
  PricingArgs pricing;
  std::vector<double> f_values{1.0, 2.0, 4.0};
  std::optional<double> dp_slowdown;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out) {
  const auto cfg = load_config_file(a.config_path);
  const auto costs = resolve_pricing(a.pricing, cfg.hardware);
  const double k = a.dp_slowdown.value_or(cfg.parallelism.dp_comm_slowdown);
  json rows = json::array();
  for (double f : a.f_values) rows.push_back(analysis_json(cfg.model, cfg.parallelism, costs, f, k));
  out << rows.dump(2) << '\n';
  return kOk;
}

struct CalibrateArgs {
  std::string profile_path;
  std::string hardware_path;
  std::string out_path;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  const auto hw = load_hardware(read_text_file(a.hardware_path));
  const auto records = parse_profile(read_text_file(a.profile_path));
  const auto model = calibrate(records, hw);
  write_output(a.out_path, to_json(model) + "\n", out);
  for (auto kind : kAllOperatorKinds) {
    err << to_string(kind) << ": " << model.baselines(kind).size() << " baselines\n";
  }
  return kOk;
}

struct EstimateArgs {
  double params = 0.0;
  double mem_scale = 0.0;
  double base_params = kBaseParamCount;
  double base_tp = kBaseTp;
  std::string rounding = "ceil";
};

int cmd_estimate_tp(const EstimateArgs& a, std::ostream& out) {
  const auto rounding = a.rounding == "next_pow2" ? TpRounding::kNextPow2 : TpRounding::kCeil;
  const auto est = estimate_tp(a.params, a.mem_scale, rounding, a.base_params, a.base_tp);
  json j = json::object();
  j["raw"] = est.raw;
  j["tp"] = est.tp;
  out << j.dump() << '\n';
  return kOk;
}

struct SweepArgs {
  std::string spec_path;
  bool table3 = false;
  PricingArgs pricing;
  std::string hardware_path;
  std::string figure = "none";
  std::string format = "csv";
  std::string out_path;
  std::string plot_out_path;
  std::string assignments_path;
  unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const auto figure = *parse_figure(a.figure);
  const auto format = *parse_report_format(a.format);

  if (figure == Figure::kFig7) {
    const auto assignments = a.assignments_path.empty()
                                 ? reference_trend_assignments()
                                 : load_trend_assignments(read_text_file(a.assignments_path));
    const auto series = trend_series(ModelZoo::builtin(), assignments);
    const auto points = trend_plot_data(series);
    write_output(a.plot_out_path.empty() ? a.out_path : a.plot_out_path,
                 emit_plot(points, format), out);
    return kOk;
  }

  if (a.spec_path.empty() && !a.table3) {
    throw UsageError("a grid is required: pass --spec FILE or --table3-defaults");
  }
  const auto spec = a.table3 ? SweepSpec::table3_defaults()
                             : load_sweep_spec(read_text_file(a.spec_path));
  const auto hw = a.hardware_path.empty() ? reference_hardware()
                                          : load_hardware(read_text_file(a.hardware_path));
  const auto costs = resolve_pricing(a.pricing, hw);

  const auto grid = build_grid(spec);
  if (!grid.warning.empty()) err << "warning: " << grid.warning << '\n';
  const auto table = run_sweep(grid.cases, costs, a.threads);
  const auto failed = std::count_if(table.rows.begin(), table.rows.end(),
                                    [](const SweepRow& r) { return !r.error.empty(); });
  if (failed > 0) err << "warning: " << failed << " row(s) failed to price\n";

  if (figure == Figure::kNone) {
    write_output(a.out_path, emit_table(table, format), out);
    return kOk;
  }
  const auto plot = emit_plot(plot_data(table, figure), format);
  if (a.plot_out_path.empty()) {
    if (!a.out_path.empty()) write_output(a.out_path, emit_table(table, format), out);
    write_output("", plot, out);
  } else {
    write_output(a.out_path, emit_table(table, format), out);
    write_output(a.plot_out_path, plot, out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compute vs. communication projection for distributed Transformer training",
               "commscale"};
  app.set_version_flag("--version", std::string("commscale ") + COMMSCALE_VERSION);
  app.require_subcommand(1);
  app.fallthrough(false);

  auto* zoo = app.add_subcommand("zoo", "Print the built-in model zoo, one JSON object per line");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Project one iteration of a configuration");
  analyze->add_option("config", analyze_args.config_path, "Configuration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  add_pricing_options(*analyze, analyze_args.pricing);
  analyze->add_option("--flop-vs-bw", analyze_args.f, "Compute-vs-network scale f (>= 1)");
  analyze->add_option("--dp-slowdown", analyze_args.dp_slowdown,
                      "DP all-reduce slowdown under concurrent compute (>= 1)");

  EvolveArgs evolve_args;
  auto* evolve = app.add_subcommand("evolve", "Project a configuration across several f values");
  evolve->add_option("config", evolve_args.config_path, "Configuration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  add_pricing_options(*evolve, evolve_args.pricing);
  evolve->add_option("--flop-vs-bw", evolve_args.f_values, "Scale values f (>= 1)")
      ->delimiter(',')
      ->capture_default_str();
  evolve->add_option("--dp-slowdown", evolve_args.dp_slowdown, "DP all-reduce slowdown (>= 1)");

  CalibrateArgs calibrate_args;
  auto* calib = app.add_subcommand("calibrate", "Build a cost model from a profile CSV");
  calib->add_option("profile", calibrate_args.profile_path, "Profile CSV (kind,size_metric,time_s)")
      ->required()
      ->check(CLI::ExistingFile);
  calib->add_option("--hardware", calibrate_args.hardware_path, "Hardware JSON")
      ->required()
      ->check(CLI::ExistingFile);
  calib->add_option("--out", calibrate_args.out_path, "Cost-model output path (default stdout)");

  EstimateArgs estimate_args;
  auto* estimate = app.add_subcommand("estimate-tp", "Estimate the TP degree a model size needs");
  estimate->add_option("--params", estimate_args.params, "Parameter count")
      ->required()
      ->check(CLI::PositiveNumber);
  estimate->add_option("--mem-scale", estimate_args.mem_scale, "Device memory capacity growth")
      ->required()
      ->check(CLI::PositiveNumber);
  estimate->add_option("--base-params", estimate_args.base_params, "Anchor parameter count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  estimate->add_option("--base-tp", estimate_args.base_tp, "Anchor TP degree")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  estimate->add_option("--round", estimate_args.rounding, "Rounding: ceil or next_pow2")
      ->check(CLI::IsMember({"ceil", "next_pow2"}))
      ->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Sweep a hyperparameter grid");
  auto* spec_opt = sweep->add_option("--spec", sweep_args.spec_path, "Sweep spec JSON")
                       ->check(CLI::ExistingFile);
  auto* t3 = sweep->add_flag("--table3-defaults", sweep_args.table3, "Use the default grid");
  spec_opt->excludes(t3);
  t3->excludes(spec_opt);
  add_pricing_options(*sweep, sweep_args.pricing);
  sweep->add_option("--hardware", sweep_args.hardware_path,
                    "Hardware JSON for roofline pricing (default: reference hardware)")
      ->check(CLI::ExistingFile);
  sweep->add_option("--figure", sweep_args.figure, "Plot data: fig7, fig10..fig14")
      ->check(CLI::IsMember({"none", "fig7", "fig10", "fig11", "fig12", "fig13", "fig14"}))
      ->capture_default_str();
  sweep->add_option("--format", sweep_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--out", sweep_args.out_path, "Result table path");
  sweep->add_option("--plot-out", sweep_args.plot_out_path, "Plot-data path");
  sweep->add_option("--assignments", sweep_args.assignments_path,
                    "Per-model batch/TP JSON for fig7")
      ->check(CLI::ExistingFile);
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*zoo) return cmd_zoo(out);
    if (*analyze) return cmd_analyze(analyze_args, out);
    if (*evolve) return cmd_evolve(evolve_args, out);
    if (*calib) return cmd_calibrate(calibrate_args, out, err);
    if (*estimate) return cmd_estimate_tp(estimate_args, out);
    if (*sweep) return cmd_sweep(sweep_args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace commscale::cli
