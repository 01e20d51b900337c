#include "commscale/report.hpp"

#include <array>

#include "commscale/errors.hpp"
#include "commscale/format.hpp"
#include "json_codec.hpp"

namespace commscale {
namespace {

constexpr std::array<std::pair<Figure, std::string_view>, 7> kFigureNames = {{
    {Figure::kNone, "none"},
    {Figure::kFig7, "fig7"},
    {Figure::kFig10, "fig10"},
    {Figure::kFig11, "fig11"},
    {Figure::kFig12, "fig12"},
    {Figure::kFig13, "fig13"},
    {Figure::kFig14, "fig14"},
}};

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string shape_label(const SweepPoint& p, bool with_seq_len, bool with_tp, bool with_f) {
  std::string label = "H=" + format_kilo(p.hidden);
  if (with_seq_len) label += "/SL=" + format_kilo(p.seq_len);
  label += "/B=" + std::to_string(p.batch);
  if (with_tp) label += "/TP=" + std::to_string(p.tp);
  if (with_f) label += "/f=" + format_double(p.flop_vs_bw);
  return label;
}

}  // namespace

std::optional<Figure> parse_figure(std::string_view text) {
  for (const auto& [fig, name] : kFigureNames) {
    if (text == name) return fig;
  }
  return std::nullopt;
}

std::string_view to_string(Figure figure) {
  for (const auto& [fig, name] : kFigureNames) {
    if (fig == figure) return name;
  }
  return "none";
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  return std::nullopt;
}

std::vector<PlotPoint> plot_data(const SweepTable& table, Figure figure) {
  if (figure == Figure::kNone) throw ValidationError("plot data needs a figure");
  if (figure == Figure::kFig7) {
    throw ValidationError(
        "fig7 needs normalized edge/slack per zoo model, which a sweep table does not carry");
  }
  const std::string name(to_string(figure));
  std::vector<PlotPoint> out;
  for (const auto& row : table.rows) {
    if (!row.breakdown) continue;
    const auto& b = *row.breakdown;
    const auto p = row.input.point();
    switch (figure) {
      case Figure::kFig10:
      case Figure::kFig12: {
        const bool per_f = figure == Figure::kFig12;
        if (!per_f && p.flop_vs_bw != 1.0) break;
        out.push_back({name, std::to_string(p.tp), shape_label(p, true, false, per_f),
                       b.frac_serial, true});
        break;
      }
      case Figure::kFig11:
      case Figure::kFig13: {
        const bool per_f = figure == Figure::kFig13;
        if (!per_f && p.flop_vs_bw != 1.0) break;
        out.push_back({name, std::to_string(p.seq_len * p.batch),
                       shape_label(p, false, true, per_f), overlap_percentage(b), true});
        break;
      }
      case Figure::kFig14: {
        const auto x = shape_label(p, true, true, true);
        out.push_back({name, x, "compute", b.frac_compute, false});
        out.push_back({name, x, "serialized_comm", b.frac_serial, false});
        out.push_back({name, x, "exposed_dp_comm", b.frac_exposed, false});
        // Overlay: hidden DP time already sits inside "compute".
        out.push_back({name, x, "overlap:hidden_dp_comm", b.frac_hidden, false});
        break;
      }
      default:
        break;
    }
  }
  return out;
}

std::vector<PlotPoint> trend_plot_data(std::span<const TrendPoint> series) {
  std::vector<PlotPoint> out;
  for (const auto& p : series) {
    out.push_back({"fig7", p.name, "slack", p.normalized_slack, false});
    out.push_back({"fig7", p.name, "edge", p.normalized_edge, false});
  }
  return out;
}

std::string emit_table(const SweepTable& table, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    detail::json rows = detail::json::array();
    for (const auto& row : table.rows) {
      const auto p = row.input.point();
      detail::json r = detail::json::object();
      r["H"] = p.hidden;
      r["SL"] = p.seq_len;
      r["B"] = p.batch;
      r["TP"] = p.tp;
      r["DP"] = row.input.parallelism.dp_degree;
      r["f"] = p.flop_vs_bw;
      const auto put = [&](const char* key, double v) {
        if (row.breakdown) r[key] = v; else r[key] = nullptr;
      };
      const IterationBreakdown b = row.breakdown.value_or(IterationBreakdown{});
      put("compute_s", b.compute_time);
      put("serial_comm_s", b.serialized_comm_time);
      put("dp_comm_s", b.dp_comm_time);
      put("hidden_s", b.overlapped_hidden_time);
      put("exposed_s", b.exposed_dp_time);
      put("frac_compute", b.frac_compute);
      put("frac_serial", b.frac_serial);
      put("frac_exposed", b.frac_exposed);
      put("edge_ratio", row.edge_ratio);
      put("slack_ratio", row.slack_ratio);
      r["error"] = row.error;
      rows.push_back(std::move(r));
    }
    return rows.dump(2) + "\n";
  }

  std::string out(kResultCsvHeader);
  out += '\n';
  for (const auto& row : table.rows) {
    const auto p = row.input.point();
    out += std::to_string(p.hidden) + ',' + std::to_string(p.seq_len) + ',' +
           std::to_string(p.batch) + ',' + std::to_string(p.tp) + ',' +
           std::to_string(row.input.parallelism.dp_degree) + ',' + format_double(p.flop_vs_bw);
    if (row.breakdown) {
      const auto& b = *row.breakdown;
      for (double v : {b.compute_time, b.serialized_comm_time, b.dp_comm_time,
                       b.overlapped_hidden_time, b.exposed_dp_time, b.frac_compute, b.frac_serial,
                       b.frac_exposed, row.edge_ratio, row.slack_ratio}) {
        out += ',' + format_double(v);
      }
    } else {
      out += std::string(10, ',');
    }
    out += ',' + csv_field(row.error) + '\n';
  }
  return out;
}

std::string emit_plot(std::span<const PlotPoint> points, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    detail::json rows = detail::json::array();
    for (const auto& p : points) {
      detail::json r = detail::json::object();
      r["figure"] = p.figure;
      if (p.x_numeric) {
        r["x"] = detail::json::parse(p.x);
      } else {
        r["x"] = p.x;
      }
      r["series"] = p.series;
      r["y"] = p.y;
      rows.push_back(std::move(r));
    }
    return rows.dump(2) + "\n";
  }
  std::string out(kPlotCsvHeader);
  out += '\n';
  for (const auto& p : points) {
    out += csv_field(p.figure) + ',' + csv_field(p.x) + ',' + csv_field(p.series) + ',' +
           format_double(p.y) + '\n';
  }
  return out;
}

std::string emit_report(const SweepTable& table, ReportFormat format, Figure figure) {
  if (figure == Figure::kNone) return emit_table(table, format);
  const auto points = plot_data(table, figure);
  return emit_plot(points, format);
}

}  // namespace commscale
