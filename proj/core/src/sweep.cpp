#include "commscale/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "commscale/analytic.hpp"
#include "commscale/errors.hpp"
#include "json_codec.hpp"

namespace commscale {
namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<std::uint64_t> powers_of_two(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (auto v = lo; v <= hi; v *= 2) out.push_back(v);
  return out;
}

SweepRow evaluate(const SweepCase& c, const CostModel& costs) {
  SweepRow row;
  row.input = c;
  try {
    row.breakdown = combined_breakdown(c.model, c.parallelism, costs, c.flop_vs_bw,
                                       c.parallelism.dp_comm_slowdown);
    const auto ratios = edge_slack(c.model, c.parallelism);
    row.edge_ratio = ratios.edge_ratio;
    row.slack_ratio = ratios.slack_ratio;
  } catch (const std::exception& e) {
    row.breakdown.reset();
    row.edge_ratio = 0.0;
    row.slack_ratio = 0.0;
    row.error = e.what();
  }
  return row;
}

}  // namespace

SweepSpec SweepSpec::table3_defaults() {
  SweepSpec spec;
  spec.hidden_values = powers_of_two(1024, 65536);
  spec.seq_len_values = powers_of_two(1024, 8192);
  spec.batch_values = {1, 4};
  spec.tp_values = powers_of_two(4, 256);
  spec.f_values = {1.0};
  return spec;
}

SweepFilter seq_batch_product_filter(std::vector<std::uint64_t> products) {
  return [products = std::move(products)](const SweepPoint& p) {
    return std::find(products.begin(), products.end(), p.seq_len * p.batch) != products.end();
  };
}

SweepPoint SweepCase::point() const {
  return {model.hidden, model.seq_len, model.batch, parallelism.tp_degree, flop_vs_bw};
}

GridResult build_grid(const SweepSpec& spec) {
  const auto hs = sorted_unique(spec.hidden_values);
  const auto sls = sorted_unique(spec.seq_len_values);
  const auto bs = sorted_unique(spec.batch_values);
  const auto tps = sorted_unique(spec.tp_values);
  const auto fs = sorted_unique(spec.f_values);
  for (auto [name, empty] : {std::pair{"H", hs.empty()}, std::pair{"SL", sls.empty()},
                             std::pair{"B", bs.empty()}, std::pair{"TP", tps.empty()},
                             std::pair{"f", fs.empty()}}) {
    if (empty) throw ValidationError(std::string("sweep axis '") + name + "' has no values");
  }

  GridResult result;
  for (auto h : hs) {
    for (auto sl : sls) {
      for (auto b : bs) {
        for (auto tp : tps) {
          if (tp == 0 || h % tp != 0) continue;
          for (auto f : fs) {
            const SweepPoint point{h, sl, b, tp, f};
            const bool keep = std::all_of(spec.filters.begin(), spec.filters.end(),
                                          [&](const SweepFilter& fn) { return fn(point); });
            if (!keep) continue;

            SweepCase c;
            c.model.name = "sweep";
            c.model.num_layers = spec.num_layers;
            c.model.hidden = h;
            c.model.seq_len = sl;
            c.model.batch = b;
            c.model.ffn_mult = spec.ffn_mult;
            c.model.precision_bits = spec.precision_bits;
            c.parallelism.tp_degree = tp;
            c.parallelism.dp_degree = spec.dp_degree;
            c.parallelism.dp_comm_slowdown = spec.dp_slowdown;
            c.flop_vs_bw = f;
            result.cases.push_back(std::move(c));
          }
        }
      }
    }
  }
  if (result.cases.empty()) result.warning = "sweep grid is empty after filtering";
  return result;
}

SweepTable run_sweep(const std::vector<SweepCase>& grid, const CostModel& costs,
                     unsigned threads) {
  SweepTable table;
  table.rows.resize(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));

  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) table.rows[i] = evaluate(grid[i], costs);
    return table;
  }

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
          table.rows[i] = evaluate(grid[i], costs);
        }
      });
    }
  }
  return table;
}

SweepSpec load_sweep_spec(std::string_view document) {
  using detail::json;
  const json root = detail::parse_json(document, "sweep-spec");
  detail::require_object(root, "");
  detail::reject_unknown_keys(root, "",
                              {"H", "SL", "B", "TP", "f", "dp", "dp_slowdown", "num_layers",
                               "ffn_mult", "precision_bits", "filters"});

  SweepSpec spec = SweepSpec::table3_defaults();
  auto read_uints = [&](const char* key, std::vector<std::uint64_t>& out) {
    if (!root.contains(key)) return;
    const auto& arr = root.at(key);
    if (!arr.is_array()) throw ParseError(key, "expected an array");
    out.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto v = detail::as_uint(arr[i], std::string(key) + "[" + std::to_string(i) + "]");
      if (v == 0) {
        throw ValidationError(std::string(key) + "[" + std::to_string(i) + "] must be >= 1");
      }
      out.push_back(v);
    }
  };
  read_uints("H", spec.hidden_values);
  read_uints("SL", spec.seq_len_values);
  read_uints("B", spec.batch_values);
  read_uints("TP", spec.tp_values);
  if (root.contains("f")) {
    const auto& arr = root.at("f");
    if (!arr.is_array()) throw ParseError("f", "expected an array");
    spec.f_values.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto path = "f[" + std::to_string(i) + "]";
      const double f = detail::as_double(arr[i], path);
      if (!(f >= 1.0) || !std::isfinite(f)) throw ValidationError(path + " must be >= 1");
      spec.f_values.push_back(f);
    }
  }
  if (root.contains("dp")) spec.dp_degree = detail::as_uint(root.at("dp"), "dp");
  if (root.contains("dp_slowdown")) {
    spec.dp_slowdown = detail::as_double(root.at("dp_slowdown"), "dp_slowdown");
  }
  if (root.contains("num_layers")) {
    spec.num_layers = detail::as_uint(root.at("num_layers"), "num_layers");
  }
  if (root.contains("ffn_mult")) spec.ffn_mult = detail::as_uint(root.at("ffn_mult"), "ffn_mult");
  if (root.contains("precision_bits")) {
    const auto bits = detail::as_uint(root.at("precision_bits"), "precision_bits");
    if (bits != 8 && bits != 16 && bits != 32 && bits != 64) {
      throw ValidationError("precision_bits must be one of {8, 16, 32, 64}, got " +
                            std::to_string(bits));
    }
    spec.precision_bits = static_cast<std::uint32_t>(bits);
  }
  if (root.contains("filters")) {
    const auto& filters = detail::require_object(root.at("filters"), "filters");
    detail::reject_unknown_keys(filters, "filters", {"sl_times_b"});
    if (filters.contains("sl_times_b")) {
      const auto& arr = filters.at("sl_times_b");
      if (!arr.is_array()) throw ParseError("filters.sl_times_b", "expected an array");
      std::vector<std::uint64_t> products;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        products.push_back(
            detail::as_uint(arr[i], "filters.sl_times_b[" + std::to_string(i) + "]"));
      }
      spec.filters.push_back(seq_batch_product_filter(std::move(products)));
    }
  }

  ParallelismConfig fixed;
  fixed.dp_degree = spec.dp_degree;
  fixed.dp_comm_slowdown = spec.dp_slowdown;
  validate(fixed);
  if (spec.num_layers == 0) throw ValidationError("num_layers must be >= 1");
  if (spec.ffn_mult == 0) throw ValidationError("ffn_mult must be >= 1");
  for (auto [name, empty] :
       {std::pair{"H", spec.hidden_values.empty()}, std::pair{"SL", spec.seq_len_values.empty()},
        std::pair{"B", spec.batch_values.empty()}, std::pair{"TP", spec.tp_values.empty()},
        std::pair{"f", spec.f_values.empty()}}) {
    if (empty) throw ValidationError(std::string("sweep axis '") + name + "' has no values");
  }
  return spec;
}

}  // namespace commscale
