#include "commscale/zoo.hpp"

#include <algorithm>
#include <cctype>

#include "commscale/errors.hpp"

namespace commscale {
namespace {

constexpr std::uint64_t kK = 1024;

TransformerConfig entry(std::string name, std::uint64_t layers, std::uint64_t hidden,
                        std::uint64_t heads, double params, std::uint64_t seq_len) {
  TransformerConfig cfg;
  cfg.name = std::move(name);
  cfg.num_layers = layers;
  cfg.hidden = hidden;
  cfg.seq_len = seq_len;
  cfg.batch = 1;
  cfg.ffn_mult = 4;
  cfg.precision_bits = 16;
  cfg.param_count = params;
  cfg.num_heads = heads;
  return cfg;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

ModelZoo::ModelZoo(std::vector<TransformerConfig> entries) : entries_(std::move(entries)) {
  for (const auto& cfg : entries_) validate(cfg);
}

const ModelZoo& ModelZoo::builtin() {
  static const ModelZoo zoo({
      entry("BERT", 24, 1 * kK, 16, 0.34e9, 512),
      entry("T5", 24, 1 * kK, 128, 11e9, 512),
      entry("GPT-2", 48, 1600, 25, 1.54e9, 1 * kK),
      entry("Mega-LM", 74, 3 * kK, 24, 8.3e9, 1 * kK),
      entry("T-NLG", 78, 4256, 28, 17e9, 1 * kK),
      entry("GPT-3", 96, 12 * kK, 96, 175e9, 2 * kK),
      entry("MT-NLG", 105, 20 * kK, 128, 530e9, 2 * kK),
      entry("PaLM", 118, 18 * kK, 48, 540e9, 2 * kK),
  });
  return zoo;
}

std::vector<std::string> ModelZoo::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& cfg : entries_) out.push_back(cfg.name);
  return out;
}

bool ModelZoo::contains(std::string_view name) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const TransformerConfig& cfg) { return iequals(cfg.name, name); });
}

const TransformerConfig& ModelZoo::lookup(std::string_view name) const {
  for (const auto& cfg : entries_) {
    if (iequals(cfg.name, name)) return cfg;
  }
  std::string known;
  for (const auto& cfg : entries_) {
    if (!known.empty()) known += ", ";
    known += cfg.name;
  }
  throw ValidationError("unknown zoo model '" + std::string(name) + "'; available: " + known);
}

}  // namespace commscale
