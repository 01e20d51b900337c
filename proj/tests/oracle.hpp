#pragma once

// Test-only reference counts. Kept independent of the library: shapes are
// written out here by hand and summed in 128-bit arithmetic.

#include <cstdint>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;

struct Gemm {
  u128 m, n, k, batch;
};

inline u128 gemm_ops(const Gemm& g) { return 2 * g.m * g.n * g.k * g.batch; }

inline u128 total(const std::vector<Gemm>& gemms) {
  u128 sum = 0;
  for (const auto& g : gemms) sum += gemm_ops(g);
  return sum;
}

struct Dims {
  std::uint64_t h, sl, b, tp, ffn = 4;
};

// Activations are (SL*B) x H; weights sliced column-wise across TP.
inline std::vector<Gemm> fc_forward(const Dims& d) {
  return {{u128(d.sl) * d.b, u128(d.ffn) * d.h / d.tp, d.h, 1}};
}

// Per sample: (SL x H/TP) times (H/TP x SL).
inline std::vector<Gemm> attention_forward(const Dims& d) {
  return {{d.sl, d.sl, d.h / d.tp, d.b}};
}

// Three H x H/TP projections.
inline std::vector<Gemm> linear_forward(const Dims& d) {
  const Gemm g{u128(d.sl) * d.b, d.h / d.tp, d.h, 1};
  return {g, g, g};
}

// Data gradient and weight gradient of the FC GEMM.
inline std::vector<Gemm> fc_backward(const Dims& d) {
  const u128 rows = u128(d.sl) * d.b;
  const u128 cols = u128(d.ffn) * d.h / d.tp;
  return {{rows, d.h, cols, 1}, {cols, d.h, rows, 1}};
}

// Counts multiply-adds by actually running the loops.
inline std::uint64_t loop_count(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  std::uint64_t ops = 0;
  for (std::uint64_t i = 0; i < m; ++i)
    for (std::uint64_t j = 0; j < n; ++j)
      for (std::uint64_t p = 0; p < k; ++p) ops += 2;
  return ops;
}

}  // namespace oracle
