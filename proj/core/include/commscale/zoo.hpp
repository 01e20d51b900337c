#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "commscale/types.hpp"

namespace commscale {

// Published NLP Transformer configurations, in publication order.
//
// "1K"-style sizes are multiples of 1024. Table values without a batch size
// default to B = 1. Every entry uses the 4x FC expansion.
class ModelZoo {
 public:
  explicit ModelZoo(std::vector<TransformerConfig> entries);

  // BERT, T5, GPT-2, Mega-LM, T-NLG, GPT-3, MT-NLG, PaLM.
  static const ModelZoo& builtin();

  const std::vector<TransformerConfig>& entries() const noexcept { return entries_; }
  std::vector<std::string> names() const;

  // Case-insensitive. Throws ValidationError listing the known names.
  const TransformerConfig& lookup(std::string_view name) const;
  bool contains(std::string_view name) const;

 private:
  std::vector<TransformerConfig> entries_;
};

inline const TransformerConfig& zoo_lookup(std::string_view name) {
  return ModelZoo::builtin().lookup(name);
}

}  // namespace commscale
