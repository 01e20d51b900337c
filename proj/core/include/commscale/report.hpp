#pragma once

// CSV/JSON emission for sweep tables and tidy long-format plot data
// (`figure,x,series,y`). Rendering is left to external tools.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commscale/analytic.hpp"
#include "commscale/sweep.hpp"

namespace commscale {

enum class ReportFormat { kCsv, kJson };

// kFig10/kFig12: serialized fraction vs TP (fig12 adds f to the series).
// kFig11/kFig13: DP overlap % vs SL*B (fig13 adds f). kFig14: stacked
// critical-path composition per row. kFig7: normalized edge/slack per zoo
// model, built from a trend series rather than a sweep table.
enum class Figure { kNone, kFig7, kFig10, kFig11, kFig12, kFig13, kFig14 };

std::optional<Figure> parse_figure(std::string_view text);
std::string_view to_string(Figure figure);
std::optional<ReportFormat> parse_report_format(std::string_view text);

inline constexpr std::string_view kResultCsvHeader =
    "H,SL,B,TP,DP,f,compute_s,serial_comm_s,dp_comm_s,hidden_s,exposed_s,frac_compute,"
    "frac_serial,frac_exposed,edge_ratio,slack_ratio,error";
inline constexpr std::string_view kPlotCsvHeader = "figure,x,series,y";

struct PlotPoint {
  std::string figure;
  std::string x;  // numeric text, or a category label (fig7, fig14)
  std::string series;
  double y = 0.0;
  bool x_numeric = true;

  bool operator==(const PlotPoint&) const = default;
};

// Series labels name every free coordinate, e.g. "H=16K/SL=2K/B=1" for fig10,
// so each (x, series) pair maps back to exactly one row. fig10 and fig11 only
// take rows at f = 1. Failed rows are skipped. Throws ValidationError for
// kFig7 (no zoo columns in a sweep table) and kNone.
std::vector<PlotPoint> plot_data(const SweepTable& table, Figure figure);

// x = model name; series "slack" and "edge", normalized to the first model.
std::vector<PlotPoint> trend_plot_data(std::span<const TrendPoint> series);

std::string emit_table(const SweepTable& table, ReportFormat format);
std::string emit_plot(std::span<const PlotPoint> points, ReportFormat format);

// kNone emits the full result table; any figure emits its plot data.
std::string emit_report(const SweepTable& table, ReportFormat format, Figure figure);

}  // namespace commscale
