#include "commscale/config_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "commscale/errors.hpp"
#include "commscale/zoo.hpp"
#include "json_codec.hpp"

namespace commscale {
namespace detail {

std::string join_path(std::string_view parent, std::string_view key) {
  if (parent.empty()) return std::string(key);
  return std::string(parent) + "." + std::string(key);
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what), std::string("invalid JSON: ") + e.what());
  }
}

const json& require_object(const json& value, const std::string& path) {
  if (!value.is_object()) throw ParseError(path, "expected an object");
  return value;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto name : allowed) known = known || key == name;
    if (!known) throw ParseError(join_path(path, key), "unknown key");
  }
}

std::uint64_t as_uint(const json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    const auto v = value.get<std::int64_t>();
    if (v < 0) throw ParseError(path, "expected a non-negative integer, got " + value.dump());
    return static_cast<std::uint64_t>(v);
  }
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (v >= 0.0 && v < 1.8e19 && std::floor(v) == v) return static_cast<std::uint64_t>(v);
  }
  throw ParseError(path, "expected a non-negative integer, got " + value.dump());
}

double as_double(const json& value, const std::string& path) {
  if (!value.is_number()) throw ParseError(path, "expected a number, got " + value.dump());
  return value.get<double>();
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw ParseError(path, "expected a string, got " + value.dump());
  return value.get<std::string>();
}

HardwareConfig hardware_from_json(const json& obj, const std::string& path) {
  require_object(obj, path);
  reject_unknown_keys(obj, path,
                      {"peak_flops", "flops_efficiency", "ar_bandwidth", "ar_ref_devices",
                       "flop_vs_bw_scale"});
  HardwareConfig hw;
  for (auto key : {"peak_flops", "ar_bandwidth"}) {
    if (!obj.contains(key)) throw ParseError(join_path(path, key), "required key missing");
  }
  hw.peak_flops = as_double(obj.at("peak_flops"), join_path(path, "peak_flops"));
  hw.ar_bandwidth = as_double(obj.at("ar_bandwidth"), join_path(path, "ar_bandwidth"));
  if (obj.contains("flops_efficiency")) {
    hw.flops_efficiency =
        as_double(obj.at("flops_efficiency"), join_path(path, "flops_efficiency"));
  }
  if (obj.contains("ar_ref_devices")) {
    hw.ar_ref_devices = as_uint(obj.at("ar_ref_devices"), join_path(path, "ar_ref_devices"));
  }
  if (obj.contains("flop_vs_bw_scale")) {
    hw.flop_vs_bw_scale =
        as_double(obj.at("flop_vs_bw_scale"), join_path(path, "flop_vs_bw_scale"));
  }
  validate(hw);
  return hw;
}

json hardware_to_json(const HardwareConfig& hw) {
  json out = json::object();
  out["peak_flops"] = hw.peak_flops;
  out["flops_efficiency"] = hw.flops_efficiency;
  out["ar_bandwidth"] = hw.ar_bandwidth;
  out["ar_ref_devices"] = hw.ar_ref_devices;
  out["flop_vs_bw_scale"] = hw.flop_vs_bw_scale;
  return out;
}

}  // namespace detail

namespace {

using detail::as_double;
using detail::as_string;
using detail::as_uint;
using detail::join_path;
using detail::json;

TransformerConfig model_from_json(const json& obj) {
  const std::string path = "model";
  detail::require_object(obj, path);
  detail::reject_unknown_keys(obj, path,
                              {"zoo", "name", "num_layers", "hidden", "seq_len", "batch",
                               "ffn_mult", "fc_dim", "precision_bits", "param_count",
                               "num_heads"});

  TransformerConfig cfg;
  if (obj.contains("zoo")) {
    const auto name = as_string(obj.at("zoo"), "model.zoo");
    try {
      cfg = zoo_lookup(name);
    } catch (const ValidationError& e) {
      throw ParseError("model.zoo", e.what());
    }
  } else {
    for (auto key : {"hidden", "seq_len"}) {
      if (!obj.contains(key)) throw ParseError(join_path(path, key), "required key missing");
    }
    cfg.name = "custom";
  }

  auto read_uint = [&](const char* key, std::uint64_t& field) {
    if (obj.contains(key)) field = as_uint(obj.at(key), join_path(path, key));
  };
  if (obj.contains("name")) cfg.name = as_string(obj.at("name"), "model.name");
  read_uint("num_layers", cfg.num_layers);
  read_uint("hidden", cfg.hidden);
  read_uint("seq_len", cfg.seq_len);
  read_uint("batch", cfg.batch);
  read_uint("ffn_mult", cfg.ffn_mult);
  if (obj.contains("precision_bits")) {
    const auto bits = as_uint(obj.at("precision_bits"), "model.precision_bits");
    if (bits > std::numeric_limits<std::uint32_t>::max()) {
      throw ValidationError("model.precision_bits must be one of {8, 16, 32, 64}, got " +
                            std::to_string(bits));
    }
    cfg.precision_bits = static_cast<std::uint32_t>(bits);
  }
  if (obj.contains("param_count")) {
    cfg.param_count = as_double(obj.at("param_count"), "model.param_count");
  }
  if (obj.contains("num_heads")) {
    cfg.num_heads = as_uint(obj.at("num_heads"), "model.num_heads");
  }
  if (obj.contains("fc_dim")) {
    const auto fc_dim = as_uint(obj.at("fc_dim"), "model.fc_dim");
    if (cfg.hidden == 0 || fc_dim % cfg.hidden != 0 || fc_dim == 0) {
      throw ValidationError("model.fc_dim (" + std::to_string(fc_dim) +
                            ") must be a positive multiple of model.hidden (" +
                            std::to_string(cfg.hidden) + ")");
    }
    const auto mult = fc_dim / cfg.hidden;
    if (obj.contains("ffn_mult") && mult != cfg.ffn_mult) {
      throw ValidationError("model.fc_dim (" + std::to_string(fc_dim) +
                            ") disagrees with model.ffn_mult (" + std::to_string(cfg.ffn_mult) +
                            ") * model.hidden (" + std::to_string(cfg.hidden) + ")");
    }
    cfg.ffn_mult = mult;
  }
  validate(cfg);
  return cfg;
}

ParallelismConfig parallelism_from_json(const json& obj) {
  const std::string path = "parallelism";
  detail::require_object(obj, path);
  detail::reject_unknown_keys(obj, path, {"tp", "dp", "node_devices", "dp_comm_slowdown"});
  ParallelismConfig par;
  if (obj.contains("tp")) par.tp_degree = as_uint(obj.at("tp"), "parallelism.tp");
  if (obj.contains("dp")) par.dp_degree = as_uint(obj.at("dp"), "parallelism.dp");
  if (obj.contains("node_devices")) {
    par.node_device_count = as_uint(obj.at("node_devices"), "parallelism.node_devices");
  }
  if (obj.contains("dp_comm_slowdown")) {
    par.dp_comm_slowdown = as_double(obj.at("dp_comm_slowdown"), "parallelism.dp_comm_slowdown");
  }
  validate(par);
  return par;
}

json model_to_json(const TransformerConfig& cfg) {
  json out = json::object();
  out["name"] = cfg.name;
  out["num_layers"] = cfg.num_layers;
  out["hidden"] = cfg.hidden;
  out["seq_len"] = cfg.seq_len;
  out["batch"] = cfg.batch;
  out["ffn_mult"] = cfg.ffn_mult;
  out["precision_bits"] = cfg.precision_bits;
  if (cfg.param_count) out["param_count"] = *cfg.param_count;
  if (cfg.num_heads) out["num_heads"] = *cfg.num_heads;
  return out;
}

json parallelism_to_json(const ParallelismConfig& par) {
  json out = json::object();
  out["tp"] = par.tp_degree;
  out["dp"] = par.dp_degree;
  out["node_devices"] = par.node_device_count;
  out["dp_comm_slowdown"] = par.dp_comm_slowdown;
  return out;
}

}  // namespace

RunConfig load_config(std::string_view document) {
  const json root = detail::parse_json(document, "config");
  detail::require_object(root, "");
  detail::reject_unknown_keys(root, "", {"model", "parallelism", "hardware"});
  for (auto key : {"model", "parallelism", "hardware"}) {
    if (!root.contains(key)) throw ParseError(key, "required key missing");
  }
  RunConfig out;
  out.model = model_from_json(root.at("model"));
  out.parallelism = parallelism_from_json(root.at("parallelism"));
  out.hardware = detail::hardware_from_json(root.at("hardware"), "hardware");
  validate_pairing(out.model, out.parallelism);
  return out;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  return load_config(read_text_file(path));
}

std::string to_json(const RunConfig& config) {
  json root = json::object();
  root["model"] = model_to_json(config.model);
  root["parallelism"] = parallelism_to_json(config.parallelism);
  root["hardware"] = detail::hardware_to_json(config.hardware);
  return root.dump(2);
}

std::string to_json(const TransformerConfig& model) { return model_to_json(model).dump(); }

HardwareConfig load_hardware(std::string_view document) {
  return detail::hardware_from_json(detail::parse_json(document, "hardware"), "hardware");
}

std::string to_json(const HardwareConfig& hw) { return detail::hardware_to_json(hw).dump(2); }

std::map<std::string, TrendAssignment> load_trend_assignments(std::string_view document) {
  const json root = detail::parse_json(document, "assignments");
  detail::require_object(root, "");
  std::map<std::string, TrendAssignment> out;
  for (const auto& [name, value] : root.items()) {
    detail::require_object(value, name);
    detail::reject_unknown_keys(value, name, {"batch", "tp"});
    TrendAssignment a;
    if (value.contains("batch")) a.batch = as_uint(value.at("batch"), name + ".batch");
    if (value.contains("tp")) a.tp = as_uint(value.at("tp"), name + ".tp");
    if (a.batch == 0 || a.tp == 0) {
      throw ValidationError(name + ": batch and tp must be >= 1");
    }
    out.emplace(name, a);
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace commscale
